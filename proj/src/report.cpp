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

#include "rtosmc/report.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace rtosmc {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& what) { throw ModelError(ModelError::Kind::BadConfig, what); }

VerdictKind verdict_from_string(const std::string& s) {
    for (auto k : {VerdictKind::SafetyPass, VerdictKind::SafetyFail, VerdictKind::Deadlock, VerdictKind::LivenessPass,
                   VerdictKind::LivenessFail, VerdictKind::LimitExceeded}) {
        if (s == to_string(k)) return k;
    }
    bad("unknown verdict: " + s);
}

json check_to_json(const CheckResult& c) {
    json j;
    j["verdict"] = to_string(c.verdict);
    j["property"] = c.property;
    j["unit"] = c.unit;
    j["label"] = c.label;
    j["detail"] = c.detail;
    j["starving"] = c.starving;
    j["limit"] = c.limit;
    j["invariant_failure"] = c.invariant_failure;
    j["trace"] = c.trace_file;
    j["stats"] = {{"states", c.stats.states},
                  {"transitions", c.stats.transitions},
                  {"max_depth", c.stats.max_depth},
                  {"seconds", c.stats.seconds}};
    return j;
}

CheckResult check_from_json(const json& j) {
    CheckResult c;
    c.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    c.property = j.value("property", "");
    c.unit = j.value("unit", "");
    c.label = j.value("label", "");
    c.detail = j.value("detail", "");
    c.starving = j.value("starving", "");
    c.limit = j.value("limit", "");
    c.invariant_failure = j.value("invariant_failure", "");
    c.trace_file = j.value("trace", "");
    if (j.contains("stats")) {
        const auto& s = j["stats"];
        c.stats.states = s.value("states", std::uint64_t{0});
        c.stats.transitions = s.value("transitions", std::uint64_t{0});
        c.stats.max_depth = s.value("max_depth", std::uint64_t{0});
        c.stats.seconds = s.value("seconds", 0.0);
    }
    return c;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) bad("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) bad("cannot write " + path);
    out << text;
}

}  // namespace

CheckResult summarize(const App& app, const Verdict& v) {
    CheckResult c;
    c.verdict = v.kind;
    if (v.violation) {
        c.property = to_string(v.violation->kind);
        c.unit = app.layout.name(v.violation->unit);
        c.label = v.violation->label;
        c.detail = v.violation->detail;
    }
    c.starving = v.starving;
    c.limit = v.limit;
    c.invariant_failure = v.invariant_failure;
    c.stats = v.stats;
    return c;
}

const CellReport* MatrixReport::find(const std::string& app, PolicyKind policy) const {
    for (const auto& c : cells) {
        if (c.app == app && c.policy == policy) return &c;
    }
    return nullptr;
}

std::string serialize_report(const MatrixReport& r) {
    json j;
    j["format_version"] = r.format_version;
    j["cells"] = json::array();
    for (const auto& c : r.cells) {
        json cj;
        cj["app"] = c.app;
        cj["policy"] = to_string(c.policy);
        cj["config_hash"] = c.config_hash;
        if (c.safety) cj["safety"] = check_to_json(*c.safety);
        if (c.liveness) cj["liveness"] = check_to_json(*c.liveness);
        j["cells"].push_back(std::move(cj));
    }
    return j.dump(2) + "\n";
}

MatrixReport parse_report(const std::string& text) {
    try {
        const json j = json::parse(text);
        MatrixReport r;
        r.format_version = j.at("format_version").get<int>();
        if (r.format_version != kReportFormatVersion) bad("unsupported report format version");
        for (const auto& cj : j.at("cells")) {
            CellReport c;
            c.app = cj.at("app").get<std::string>();
            const auto p = policy_from_string(cj.at("policy").get<std::string>());
            if (!p) bad("unknown policy in report");
            c.policy = *p;
            c.config_hash = cj.value("config_hash", "");
            if (cj.contains("safety")) c.safety = check_from_json(cj["safety"]);
            if (cj.contains("liveness")) c.liveness = check_from_json(cj["liveness"]);
            r.cells.push_back(std::move(c));
        }
        return r;
    } catch (const json::exception& e) {
        bad(std::string("malformed report: ") + e.what());
    }
}

MatrixReport load_report(const std::string& path) { return parse_report(read_file(path)); }

void save_report(const MatrixReport& r, const std::string& path) { write_file(path, serialize_report(r)); }

std::vector<std::string> diff_reports(const MatrixReport& expected, const MatrixReport& actual) {
    std::vector<std::string> out;
    auto describe = [](const std::optional<CheckResult>& c) -> std::string {
        if (!c) return "absent";
        std::string s = to_string(c->verdict);
        if (!c->property.empty()) s += "(" + c->property + ")";
        if (!c->starving.empty()) s += "[" + c->starving + "]";
        return s;
    };
    auto same = [](const std::optional<CheckResult>& a, const std::optional<CheckResult>& b) {
        if (!a || !b) return !a && !b;
        return a->verdict == b->verdict && a->property == b->property && a->starving == b->starving;
    };
    for (const auto& c : actual.cells) {
        const std::string where = c.app + "/" + to_string(c.policy);
        const CellReport* e = expected.find(c.app, c.policy);
        if (!e) {
            out.push_back(where + ": not in the expected matrix");
            continue;
        }
        if (!same(e->safety, c.safety)) {
            out.push_back(where + " safety: expected " + describe(e->safety) + ", got " + describe(c.safety));
        }
        if (!same(e->liveness, c.liveness)) {
            out.push_back(where + " liveness: expected " + describe(e->liveness) + ", got " + describe(c.liveness));
        }
    }
    return out;
}

std::string trace_to_jsonl(const Trace& t) {
    json h;
    h["app"] = t.app;
    h["policy"] = t.policy;
    h["config_hash"] = to_hex64(t.config_hash);
    h["initial_digest"] = to_hex64(t.initial_digest);
    h["steps"] = t.steps.size();
    if (t.loop_start) h["loop_start"] = *t.loop_start;
    std::string out = h.dump() + "\n";
    for (const auto& s : t.steps) {
        json j;
        j["i"] = s.i;
        j["unit"] = raw(s.unit);
        j["label"] = s.label;
        j["digest"] = to_hex64(s.digest);
        out += j.dump() + "\n";
    }
    return out;
}

Trace trace_from_jsonl(const std::string& text, const App* app) {
    std::istringstream in(text);
    std::string line;
    Trace t;
    bool header = true;
    try {
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            const json j = json::parse(line);
            if (header) {
                t.app = j.at("app").get<std::string>();
                t.policy = j.at("policy").get<std::string>();
                t.config_hash = from_hex64(j.at("config_hash").get<std::string>());
                t.initial_digest = from_hex64(j.value("initial_digest", std::string("0000000000000000")));
                if (j.contains("loop_start")) t.loop_start = j["loop_start"].get<std::size_t>();
                header = false;
                continue;
            }
            TraceStep s;
            s.i = j.at("i").get<std::uint32_t>();
            s.unit = UnitId{j.at("unit").get<std::uint8_t>()};
            s.label = j.at("label").get<std::string>();
            s.digest = from_hex64(j.at("digest").get<std::string>());
            if (s.label == "entry") {
                s.ordinal = kEntryOrdinal;
            } else if (s.label == "trigger") {
                s.ordinal = kTriggerOrdinal;
            } else if (app && raw(s.unit) < app->programs.size()) {
                const auto& nodes = app->program(s.unit).nodes;
                for (std::size_t k = 0; k < nodes.size(); ++k) {
                    if (nodes[k].name == s.label) s.ordinal = static_cast<std::uint8_t>(k);
                }
            }
            t.steps.push_back(std::move(s));
        }
    } catch (const json::exception& e) {
        bad(std::string("malformed trace: ") + e.what());
    } catch (const std::logic_error& e) {
        bad(std::string("malformed trace: ") + e.what());
    }
    if (header) bad("empty trace");
    return t;
}

void save_trace(const Trace& t, const std::string& path) { write_file(path, trace_to_jsonl(t)); }

Trace load_trace(const std::string& path, const App* app) { return trace_from_jsonl(read_file(path), app); }

}  // namespace rtosmc
