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

// Structural checks over counterexample traces.

#include "rtosmc/explorer.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>

namespace rtosmc {

/// A task elected by PendSV loses its slice before running: SysTick is
/// tail-chained on PendSV's return, and the next election picks another task.
struct VictimPattern {
    std::size_t elect_step = 0;    // PendSV SET_TOP that elects the victim
    std::size_t chain_step = 0;    // PendSV ExpReturn that tail-chains into SysTick
    std::size_t reelect_step = 0;  // PendSV SET_TOP that elects someone else
    UnitId victim{};
    UnitId successor{};
};

/// First occurrence of the pattern in `trace` (replayed against `app`).
std::optional<VictimPattern> find_victim_pattern(const App& app, const Trace& trace);

/// What happens inside the loop of a lasso trace.
struct LoopSummary {
    std::size_t steps = 0;
    std::size_t triggers = 0;
    std::map<std::string, std::size_t> commands;  // per unit name
    std::map<std::string, std::size_t> yields;    // commands of nodes that may give up the processor
    std::map<std::string, std::size_t> progress;  // progress-labelled commands
};

/// Throws ModelError(BadConfig) when the trace has no loop.
LoopSummary summarize_loop(const App& app, const Trace& trace);

}  // namespace rtosmc
