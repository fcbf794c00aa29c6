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

// rtosmc: run one cell or the whole verdict matrix.
//
// Exit status: 0 all requested checks pass, 1 some verified failure (or
// drift against --expect), 2 inconclusive, 3 usage or configuration error.

#include "rtosmc/matrix.hpp"
#include "rtosmc/toys.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>

using namespace rtosmc;
using nlohmann::json;

namespace {

constexpr int kUsageError = 3;

struct AppSection {
    std::map<std::string, int> params;
    std::optional<bool> with_check_task;
    std::optional<bool> fix_delay;
    std::optional<bool> idle_yields;
};

struct FileConfig {
    std::optional<std::uint64_t> max_states;
    std::optional<std::uint64_t> max_depth;
    std::optional<int> workers;
    std::optional<std::string> waiter_order;
    std::optional<bool> idle_yields;
    std::map<std::string, AppSection> apps;  // keyed by lower-case app name
};

std::string lower(std::string s) {
    for (auto& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return s;
}

FileConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ModelError(ModelError::Kind::BadConfig, "cannot read config " + path);
    FileConfig c;
    try {
        const json j = json::parse(in);
        if (j.contains("limits")) {
            const auto& l = j["limits"];
            if (l.contains("max_states")) c.max_states = l["max_states"].get<std::uint64_t>();
            if (l.contains("max_depth")) c.max_depth = l["max_depth"].get<std::uint64_t>();
        }
        if (j.contains("workers")) c.workers = j["workers"].get<int>();
        if (j.contains("waiter_order")) c.waiter_order = j["waiter_order"].get<std::string>();
        if (j.contains("idle_yields")) c.idle_yields = j["idle_yields"].get<bool>();
        if (j.contains("apps")) {
            for (const auto& [name, body] : j["apps"].items()) {
                AppSection s;
                for (const auto& [key, val] : body.items()) {
                    if (key == "with_check_task") {
                        s.with_check_task = val.get<bool>();
                    } else if (key == "fix_delay") {
                        s.fix_delay = val.get<bool>();
                    } else if (key == "idle_yields") {
                        s.idle_yields = val.get<bool>();
                    } else {
                        s.params[key] = val.get<int>();
                    }
                }
                c.apps[lower(name)] = std::move(s);
            }
        }
    } catch (const json::exception& e) {
        throw ModelError(ModelError::Kind::BadConfig, std::string("bad config: ") + e.what());
    }
    return c;
}

bool parse_bool(const std::string& s) {
    const auto k = lower(s);
    if (k == "true" || k == "1" || k == "yes" || k == "on") return true;
    if (k == "false" || k == "0" || k == "no" || k == "off") return false;
    throw ModelError(ModelError::Kind::BadConfig, "not a boolean: " + s);
}

/// Command-line values; unset optionals fall back to the config file.
struct Flags {
    std::string config;
    std::string check = "all";
    std::optional<std::uint64_t> max_states;
    std::optional<std::uint64_t> max_depth;
    std::optional<int> workers;
    std::optional<std::string> waiter_order;
    std::optional<std::string> idle_yields;
    bool with_check_task = false;
    bool fix_delay = false;
    bool reverse = false;
    bool invariants = false;
    bool digest_store = false;
    std::string trace_out;
    std::string report_out;
    std::vector<std::string> params;
};

void add_common(CLI::App* cmd, Flags& f) {
    cmd->add_option("--config", f.config, "JSON configuration file");
    cmd->add_option("--check", f.check, "safety | liveness | deadlock | all")
        ->check(CLI::IsMember({"safety", "liveness", "deadlock", "all"}));
    cmd->add_option("--max-states", f.max_states, "state limit");
    cmd->add_option("--max-depth", f.max_depth, "depth limit");
    cmd->add_option("--workers", f.workers, "1 = serial search, N > 1 = parallel");
    cmd->add_option("--waiter-order", f.waiter_order, "fifo | priority")
        ->check(CLI::IsMember({"fifo", "priority"}));
    cmd->add_option("--idle-yields", f.idle_yields, "true | false");
    cmd->add_flag("--with-check-task", f.with_check_task, "add the periodic check task (Dynamic)");
    cmd->add_flag("--fix-delay", f.fix_delay, "delay after each round (Countsem)");
    cmd->add_flag("--reverse", f.reverse, "explore successors in reverse order");
    cmd->add_flag("--invariants", f.invariants, "check state invariants on every state");
    cmd->add_flag("--digest-store", f.digest_store, "store 64-bit digests instead of full states");
    cmd->add_option("--trace-out", f.trace_out, "directory for failing traces");
    cmd->add_option("--report-out", f.report_out, "JSON report path");
    cmd->add_option("--param", f.params, "app parameter override, key=value");
}

CellRequest make_request(const Flags& f, const FileConfig& file) {
    CellRequest r;
    const auto check = check_from_string(f.check);
    if (!check) throw ModelError(ModelError::Kind::BadConfig, "unknown check " + f.check);
    r.check = *check;
    r.explore.limits.max_states = f.max_states.value_or(file.max_states.value_or(r.explore.limits.max_states));
    r.explore.limits.max_depth = f.max_depth.value_or(file.max_depth.value_or(r.explore.limits.max_depth));
    r.explore.workers = f.workers.value_or(file.workers.value_or(1));
    if (r.explore.workers < 1) throw ModelError(ModelError::Kind::BadConfig, "workers must be positive");
    r.explore.reverse_children = f.reverse;
    r.explore.check_invariants = f.invariants;
    r.explore.store = f.digest_store ? StoreMode::Digest : StoreMode::Exact;
    const auto order = f.waiter_order ? f.waiter_order : file.waiter_order;
    if (order) {
        if (*order == "fifo") {
            r.options.waiter_order = WaiterOrder::Fifo;
        } else if (*order == "priority") {
            r.options.waiter_order = WaiterOrder::Priority;
        } else {
            throw ModelError(ModelError::Kind::BadConfig, "unknown waiter order " + *order);
        }
    }
    r.trace_dir = f.trace_out;
    return r;
}

/// Per-app file section first, then command-line flags on top.
void apply_app(CellRequest& r, const Flags& f, const FileConfig& file) {
    if (file.idle_yields) r.options.idle_yields = file.idle_yields;
    if (const auto it = file.apps.find(lower(r.app)); it != file.apps.end()) {
        const auto& s = it->second;
        for (const auto& [k, v] : s.params) r.options.params[k] = v;
        if (s.with_check_task) r.options.with_check_task = *s.with_check_task;
        if (s.fix_delay) r.options.fix_delay = *s.fix_delay;
        if (s.idle_yields) r.options.idle_yields = s.idle_yields;
    }
    if (f.with_check_task) r.options.with_check_task = true;
    if (f.fix_delay) r.options.fix_delay = true;
    if (f.idle_yields) r.options.idle_yields = parse_bool(*f.idle_yields);
    for (const auto& kv : f.params) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ModelError(ModelError::Kind::BadConfig, "--param expects key=value: " + kv);
        try {
            r.options.params[kv.substr(0, eq)] = std::stoi(kv.substr(eq + 1));
        } catch (const std::logic_error&) {
            throw ModelError(ModelError::Kind::BadConfig, "--param value is not an integer: " + kv);
        }
    }
}

void print_check(const char* what, const std::optional<CheckResult>& c) {
    if (!c) return;
    std::cout << "  " << what << ": " << to_string(c->verdict);
    if (!c->property.empty()) std::cout << " " << c->property << " at " << c->unit << ":" << c->label;
    if (!c->starving.empty()) std::cout << " (starving " << c->starving << ")";
    if (!c->limit.empty()) std::cout << " (limit " << c->limit << ")";
    std::cout << "  [" << c->stats.states << " states, " << c->stats.seconds << " s]";
    if (!c->trace_file.empty()) std::cout << " trace " << c->trace_file;
    if (!c->invariant_failure.empty()) std::cout << " INVARIANT: " << c->invariant_failure;
    std::cout << "\n";
}

void print_cell(const CellReport& c) {
    std::cout << c.app << " / " << to_string(c.policy) << "\n";
    print_check("safety", c.safety);
    print_check("liveness", c.liveness);
}

int invariant_status(const MatrixReport& r) {
    for (const auto& c : r.cells) {
        for (const auto* k : {&c.safety, &c.liveness}) {
            if (*k && !(*k)->invariant_failure.empty()) return 1;
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App cli{"Explicit-state model checker for an RTOS scheduler on a modeled interrupt controller"};
    cli.require_subcommand(1);

    Flags run_flags;
    std::string app_name;
    std::string policy_name;
    auto* run = cli.add_subcommand("run", "check one app under one policy");
    run->add_option("--app", app_name, "application name")->required();
    run->add_option("--policy", policy_name, "cooperative | preemptive | timeslice")->required();
    add_common(run, run_flags);

    Flags matrix_flags;
    std::string matrix_policy;
    std::string expect;
    auto* matrix = cli.add_subcommand("matrix", "check every app under every policy");
    matrix->add_option("--policy", matrix_policy, "only this policy");
    matrix->add_option("--expect", expect, "baseline report; drift is a failure");
    add_common(matrix, matrix_flags);

    std::string replay_app;
    std::string replay_policy;
    std::string replay_file;
    Flags replay_flags;
    auto* rep = cli.add_subcommand("replay", "replay a trace and verify its digests");
    rep->add_option("--app", replay_app, "application name")->required();
    rep->add_option("--policy", replay_policy, "policy")->required();
    rep->add_option("--trace", replay_file, "JSON-lines trace")->required();
    rep->add_option("--config", replay_flags.config, "JSON configuration file");
    rep->add_option("--idle-yields", replay_flags.idle_yields, "true | false");
    rep->add_flag("--with-check-task", replay_flags.with_check_task, "add the periodic check task (Dynamic)");
    rep->add_flag("--fix-delay", replay_flags.fix_delay, "delay after each round (Countsem)");
    rep->add_option("--param", replay_flags.params, "app parameter override, key=value");

    auto* list = cli.add_subcommand("list", "list apps, their parameters and the toy systems");

    try {
        cli.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return cli.exit(e);
    } catch (const CLI::ParseError& e) {
        cli.exit(e);
        return kUsageError;
    }

    try {
        if (*list) {
            for (const auto& name : app_names()) {
                std::cout << name;
                for (const auto& [k, v] : default_params(name)) std::cout << " " << k << "=" << v;
                std::cout << "\n";
            }
            for (const auto& t : toy_catalog()) std::cout << "toy " << t.name << ": " << t.summary << "\n";
            return 0;
        }

        if (*rep) {
            const FileConfig file = replay_flags.config.empty() ? FileConfig{} : load_config(replay_flags.config);
            const auto policy = policy_from_string(replay_policy);
            if (!policy) throw ModelError(ModelError::Kind::BadConfig, "unknown policy " + replay_policy);
            CellRequest req = make_request(replay_flags, file);
            req.app = replay_app;
            req.options.policy = *policy;
            apply_app(req, replay_flags, file);
            const App app = build_app(req.app, req.options);
            const Trace t = load_trace(replay_file, &app);
            if (t.config_hash != config_hash(app)) {
                std::cerr << "warning: trace was produced under a different configuration\n";
            }
            try {
                const auto states = replay(app, t);
                std::cout << "replayed " << t.steps.size() << " steps, " << states.size() << " states\n";
            } catch (const ModelError& e) {
                std::cerr << "replay failed: " << e.what() << "\n";
                return 1;
            }
            return 0;
        }

        if (*run) {
            const FileConfig file = run_flags.config.empty() ? FileConfig{} : load_config(run_flags.config);
            const auto policy = policy_from_string(policy_name);
            if (!policy) throw ModelError(ModelError::Kind::BadConfig, "unknown policy " + policy_name);
            CellRequest req = make_request(run_flags, file);
            req.app = app_name;
            req.options.policy = *policy;
            apply_app(req, run_flags, file);
            MatrixReport report;
            report.cells.push_back(run_cell(req).report);
            print_cell(report.cells.front());
            if (!run_flags.report_out.empty()) save_report(report, run_flags.report_out);
            return std::max(exit_status(report), invariant_status(report));
        }

        const FileConfig file = matrix_flags.config.empty() ? FileConfig{} : load_config(matrix_flags.config);
        std::vector<PolicyKind> policies = all_policies();
        if (!matrix_policy.empty()) {
            const auto p = policy_from_string(matrix_policy);
            if (!p) throw ModelError(ModelError::Kind::BadConfig, "unknown policy " + matrix_policy);
            policies = {*p};
        }
        const MatrixReport baseline = expect.empty() ? MatrixReport{} : load_report(expect);
        const CellRequest base = make_request(matrix_flags, file);
        const MatrixReport report =
            run_matrix(policies, base, [&](CellRequest& r) { apply_app(r, matrix_flags, file); });
        for (const auto& c : report.cells) print_cell(c);
        if (!matrix_flags.report_out.empty()) save_report(report, matrix_flags.report_out);
        if (invariant_status(report) != 0) {
            std::cout << "invariant failure\n";
            return 1;
        }
        if (expect.empty()) return exit_status(report);
        const auto drift = diff_reports(baseline, report);
        for (const auto& d : drift) std::cout << "DRIFT " << d << "\n";
        if (!drift.empty()) return 1;
        std::cout << "matches " << expect << "\n";
        return exit_status(report) == 2 ? 2 : 0;
    } catch (const ModelError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageError;
    }
}
