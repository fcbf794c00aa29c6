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

// Running cells of the verdict matrix (one app under one policy).

#include "rtosmc/report.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace rtosmc {

enum class CheckKind : std::uint8_t { Safety, Liveness, Deadlock, All };

std::optional<CheckKind> check_from_string(const std::string& s);

struct CellRequest {
    std::string app;
    AppOptions options;
    CheckKind check = CheckKind::All;
    ExploreOptions explore;
    std::string trace_dir;  // failing traces are written here when set
};

struct CellOutcome {
    CellReport report;
    std::optional<Trace> safety_trace;
    std::optional<Trace> liveness_trace;
};

CellOutcome run_cell(const CellRequest& request);

/// Every app under every policy in `policies` (apps outermost, in app_names()
/// order). `adjust` may change each request before it runs.
MatrixReport run_matrix(const std::vector<PolicyKind>& policies, const CellRequest& base,
                        const std::function<void(CellRequest&)>& adjust = {});

const std::vector<PolicyKind>& all_policies();

/// 0 all pass, 1 some verified failure, 2 some check inconclusive (and no failure).
int exit_status(const MatrixReport& r);

}  // namespace rtosmc
