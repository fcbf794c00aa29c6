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

// Brute-force reference for tiny systems. It enumerates the transition graph
// with its own interleaving step (entry arbitration, tick trigger, command
// dispatch) over a plain ordered table of full encodings, and decides
// deadlock and liveness by direct reachability per trigger edge.

#include "rtosmc/apps.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace rtosmc {

struct OracleResult {
    std::set<std::vector<std::uint8_t>> states;
    std::size_t transitions = 0;
    bool deadlock = false;
    std::optional<Violation> violation;  // some reachable assertion failure
    std::vector<std::string> starving;   // live tasks with a starving lasso, in live-task order

    bool liveness_pass() const { return starving.empty(); }
};

inline constexpr std::size_t kOracleMaxUnits = 4;

/// Throws ModelError(BadConfig) for systems above kOracleMaxUnits units or
/// with more than `max_states` reachable states.
OracleResult brute_force_oracle(const App& app, std::size_t max_states = 1U << 16);

}  // namespace rtosmc
