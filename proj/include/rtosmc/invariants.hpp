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

// Whole-state and per-transition invariants of the kernel, interrupt and IPC
// models, plus the app's own predicate. Each returns a description of the
// first breach found.

#include "rtosmc/explorer.hpp"

#include <optional>
#include <string>

namespace rtosmc {

std::optional<std::string> check_state_invariants(const App& app, const GlobalState& s);

/// Delay and timeout counters only move in the SysTick body, by exactly one.
std::optional<std::string> check_transition_invariants(const App& app, const GlobalState& pre, const Step& step);

}  // namespace rtosmc
