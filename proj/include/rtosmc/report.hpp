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

#pragma once

// Verdict reports (JSON) and counterexample traces (JSON lines).

#include "rtosmc/explorer.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rtosmc {

inline constexpr int kReportFormatVersion = 1;

/// Outcome of one check of one cell, without the trace itself.
struct CheckResult {
    VerdictKind verdict = VerdictKind::SafetyPass;
    std::string property;  // S-kind of a SafetyFail
    std::string unit;      // unit that failed the assertion
    std::string label;     // node label of the failing command
    std::string detail;
    std::string starving;  // LivenessFail
    std::string limit;     // LimitExceeded
    std::string invariant_failure;
    std::string trace_file;
    Stats stats;

    bool operator==(const CheckResult&) const = default;
};

CheckResult summarize(const App& app, const Verdict& v);

struct CellReport {
    std::string app;
    PolicyKind policy = PolicyKind::Cooperative;
    std::string config_hash;  // hex64
    std::optional<CheckResult> safety;
    std::optional<CheckResult> liveness;

    bool operator==(const CellReport&) const = default;
};

struct MatrixReport {
    int format_version = kReportFormatVersion;
    std::vector<CellReport> cells;

    bool operator==(const MatrixReport&) const = default;

    const CellReport* find(const std::string& app, PolicyKind policy) const;
};

std::string serialize_report(const MatrixReport& r);
/// Throws ModelError(BadConfig) on malformed input.
MatrixReport parse_report(const std::string& text);

MatrixReport load_report(const std::string& path);
void save_report(const MatrixReport& r, const std::string& path);

/// Verdict drift of `actual` against `expected`: verdict kind, failing
/// property and starving task per check. Cells of `expected` that `actual`
/// does not contain are ignored (filtered runs); extra cells are reported.
std::vector<std::string> diff_reports(const MatrixReport& expected, const MatrixReport& actual);

std::string trace_to_jsonl(const Trace& t);
/// Step ordinals are resolved against `app` when given, otherwise left 0.
Trace trace_from_jsonl(const std::string& text, const App* app = nullptr);

void save_trace(const Trace& t, const std::string& path);
Trace load_trace(const std::string& path, const App* app = nullptr);

}  // namespace rtosmc
