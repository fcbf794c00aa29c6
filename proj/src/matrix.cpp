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

#include <filesystem>

namespace rtosmc {

std::optional<CheckKind> check_from_string(const std::string& s) {
    if (s == "safety") return CheckKind::Safety;
    if (s == "liveness") return CheckKind::Liveness;
    if (s == "deadlock") return CheckKind::Deadlock;
    if (s == "all") return CheckKind::All;
    return std::nullopt;
}

const std::vector<PolicyKind>& all_policies() {
    static const std::vector<PolicyKind> p{PolicyKind::Cooperative, PolicyKind::PreemptiveNoSlice,
                                           PolicyKind::PreemptiveSlice};
    return p;
}

namespace {

std::string write_trace(const CellRequest& req, const App& app, const Trace& t, const char* check) {
    if (req.trace_dir.empty()) return {};
    std::filesystem::create_directories(req.trace_dir);
    const auto path = std::filesystem::path(req.trace_dir) /
                      (app.name + "_" + to_string(app.layout.kernel.policy.kind) + "_" + check + ".jsonl");
    save_trace(t, path.string());
    return path.string();
}

}  // namespace

CellOutcome run_cell(const CellRequest& req) {
    const App app = build_app(req.app, req.options);
    CellOutcome out;
    out.report.app = app.name;
    out.report.policy = req.options.policy;
    out.report.config_hash = to_hex64(config_hash(app));

    if (req.check != CheckKind::Liveness) {
        ExploreOptions opt = req.explore;
        opt.assertions = req.check != CheckKind::Deadlock;
        const Verdict v = check_safety(app, opt);
        out.report.safety = summarize(app, v);
        if (v.trace && !v.pass()) {
            out.safety_trace = v.trace;
            out.report.safety->trace_file = write_trace(req, app, *v.trace, "safety");
        }
    }
    if (req.check == CheckKind::Liveness || req.check == CheckKind::All) {
        const Verdict v = check_liveness(app, req.explore);
        out.report.liveness = summarize(app, v);
        if (v.trace && !v.pass()) {
            out.liveness_trace = v.trace;
            out.report.liveness->trace_file = write_trace(req, app, *v.trace, "liveness");
        }
    }
    return out;
}

MatrixReport run_matrix(const std::vector<PolicyKind>& policies, const CellRequest& base,
                        const std::function<void(CellRequest&)>& adjust) {
    MatrixReport r;
    for (const auto& name : app_names()) {
        for (const PolicyKind p : policies) {
            CellRequest req = base;
            req.app = name;
            req.options.policy = p;
            if (adjust) adjust(req);
            r.cells.push_back(run_cell(req).report);
        }
    }
    return r;
}

int exit_status(const MatrixReport& r) {
    bool failed = false;
    bool inconclusive = false;
    for (const auto& c : r.cells) {
        for (const auto* check : {&c.safety, &c.liveness}) {
            if (!*check) continue;
            if ((*check)->verdict == VerdictKind::LimitExceeded) {
                inconclusive = true;
            } else if ((*check)->verdict != VerdictKind::SafetyPass && (*check)->verdict != VerdictKind::LivenessPass) {
                failed = true;
            }
        }
    }
    return failed ? 1 : inconclusive ? 2 : 0;
}

}  // namespace rtosmc
