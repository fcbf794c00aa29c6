// Copyright 2026 The rtosmc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rtosmc/matrix.hpp"
#include "rtosmc/trace_check.hpp"

#include <doctest.h>

#include <filesystem>

using namespace rtosmc;

namespace {

MatrixReport sample() {
    MatrixReport r;
    CellRequest req;
    req.app = "Dynamic";
    req.options.policy = PolicyKind::PreemptiveSlice;
    r.cells.push_back(run_cell(req).report);
    req.app = "PollQ";
    req.options.policy = PolicyKind::Cooperative;
    r.cells.push_back(run_cell(req).report);
    return r;
}

}  // namespace

TEST_CASE("report JSON round-trips and diffs empty against itself") {
    const MatrixReport r = sample();
    const MatrixReport back = parse_report(serialize_report(r));
    CHECK(back == r);
    CHECK(diff_reports(r, r).empty());
    CHECK(diff_reports(r, back).empty());
}

TEST_CASE("diff reports verdict drift") {
    const MatrixReport r = sample();
    MatrixReport changed = r;
    changed.cells[0].safety->verdict = VerdictKind::SafetyPass;
    changed.cells[0].safety->property.clear();
    const auto d = diff_reports(r, changed);
    REQUIRE(d.size() == 1);
    CHECK(d[0].find("Dynamic") != std::string::npos);

    MatrixReport part;
    part.cells.push_back(r.cells[1]);
    CHECK(diff_reports(r, part).empty());  // a filtered run is compared cell by cell
    CHECK(diff_reports(part, r).size() == 1);
}

TEST_CASE("malformed reports are configuration errors") {
    CHECK_THROWS_AS(parse_report("{"), ModelError);
    CHECK_THROWS_AS(parse_report(R"({"format_version": 99, "cells": []})"), ModelError);
    CHECK_THROWS_AS(parse_report(R"({"format_version": 1, "cells": [{"app": "X", "policy": "bogus"}]})"), ModelError);
}

TEST_CASE("trace JSON lines round-trip and replay") {
    AppOptions o;
    o.policy = PolicyKind::Cooperative;
    const App a = build_app("Semtest", o);
    const Verdict v = check_liveness(a);
    REQUIRE(v.trace);
    const std::string text = trace_to_jsonl(*v.trace);
    CHECK(text.find("\"loop_start\"") != std::string::npos);
    const Trace back = trace_from_jsonl(text, &a);
    CHECK(back == *v.trace);
    CHECK_NOTHROW(replay(a, back));
    CHECK(back.config_hash == config_hash(a));
    CHECK_THROWS_AS(trace_from_jsonl(""), ModelError);
    CHECK_THROWS_AS(trace_from_jsonl(R"({"app": "x"})"), ModelError);
}

TEST_CASE("run_cell writes failing traces") {
    const auto dir = std::filesystem::temp_directory_path() / "rtosmc_test_traces";
    std::filesystem::remove_all(dir);
    CellRequest req;
    req.app = "Dynamic";
    req.options.policy = PolicyKind::PreemptiveSlice;
    req.check = CheckKind::Safety;
    req.trace_dir = dir.string();
    const CellOutcome out = run_cell(req);
    REQUIRE(out.report.safety);
    CHECK_FALSE(out.report.liveness);
    REQUIRE_FALSE(out.report.safety->trace_file.empty());
    const App a = build_app("Dynamic", req.options);
    CHECK(load_trace(out.report.safety->trace_file, &a) == *out.safety_trace);
    std::filesystem::remove_all(dir);
}

TEST_CASE("exit status") {
    MatrixReport r;
    CHECK(exit_status(r) == 0);
    CellReport c;
    c.safety = CheckResult{};
    r.cells.push_back(c);
    CHECK(exit_status(r) == 0);
    r.cells[0].liveness = CheckResult{};
    r.cells[0].liveness->verdict = VerdictKind::LimitExceeded;
    CHECK(exit_status(r) == 2);
    r.cells[0].safety->verdict = VerdictKind::SafetyFail;
    CHECK(exit_status(r) == 1);
}

TEST_CASE("victim pattern in the BlockQ time-slice counterexample") {
    AppOptions o;
    o.policy = PolicyKind::PreemptiveSlice;
    const App a = build_app("BlockQ", o);
    const Verdict v = check_safety(a);
    REQUIRE(v.kind == VerdictKind::SafetyFail);
    const auto p = find_victim_pattern(a, *v.trace);
    REQUIRE(p);
    CHECK(p->elect_step < p->chain_step);
    CHECK(p->chain_step < p->reelect_step);
    CHECK(p->successor != p->victim);
}

TEST_CASE("no victim pattern without time slicing") {
    AppOptions o;
    o.policy = PolicyKind::Cooperative;
    const App a = build_app("Semtest", o);
    const Verdict v = check_liveness(a);
    REQUIRE(v.trace);
    CHECK_FALSE(find_victim_pattern(a, *v.trace));
}

TEST_CASE("policy and check names") {
    CHECK(policy_from_string("cooperative") == PolicyKind::Cooperative);
    CHECK(policy_from_string("PreemptiveNoSlice") == PolicyKind::PreemptiveNoSlice);
    CHECK(policy_from_string("TimeSlice") == PolicyKind::PreemptiveSlice);
    CHECK_FALSE(policy_from_string("round-robin"));
    CHECK(check_from_string("deadlock") == CheckKind::Deadlock);
    CHECK_FALSE(check_from_string("everything"));
}
