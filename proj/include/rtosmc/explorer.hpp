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

// Explicit-state exploration: successor enumeration, safety (assertions and
// deadlock) by depth-first search, liveness of
//   []<>Loc_SysTick -> ([]<>Loc_1 && ... && []<>Loc_n)
// by an SCC pass over the reachable graph, and trace replay.

#include "rtosmc/apps.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rtosmc {

inline constexpr std::uint8_t kEntryOrdinal = 0xFE;
inline constexpr std::uint8_t kTriggerOrdinal = 0xFF;

/// One enabled transition and its target state.
struct Step {
    UnitId unit{};
    std::uint8_t ordinal = 0;  // node index, kEntryOrdinal or kTriggerOrdinal
    std::uint8_t progress = kNone;  // task whose Loc label this transition carries
    bool trigger = false;           // carries Loc_SysTick
    std::optional<Violation> violation;
    GlobalState next;
};

std::string_view step_label(const App& app, UnitId unit, std::uint8_t ordinal);

/// All successors of `s`, ordered by unit id then label ordinal (reversed
/// when `reverse` is set).
void successors(const App& app, const GlobalState& s, std::vector<Step>& out, bool reverse = false);

/// Execute one named transition; throws ModelError(DigestMismatch) when it is
/// not enabled in `s`.
Step apply_step(const App& app, const GlobalState& s, UnitId unit, std::uint8_t ordinal);

struct Limits {
    std::uint64_t max_states = 50'000'000;
    std::uint64_t max_depth = 100'000;
};

enum class StoreMode : std::uint8_t { Exact, Digest };

struct ExploreOptions {
    Limits limits;
    int workers = 1;             // 1 = serial reference; >1 = OpenMP parallel search
    bool reverse_children = false;
    bool check_invariants = false;
    bool assertions = true;      // false: safety search reports deadlocks only
    StoreMode store = StoreMode::Exact;
};

struct TraceStep {
    std::uint32_t i = 0;
    UnitId unit{};
    std::string label;
    std::uint8_t ordinal = 0;
    std::uint64_t digest = 0;

    bool operator==(const TraceStep&) const = default;
};

struct Trace {
    std::string app;
    std::string policy;
    std::uint64_t config_hash = 0;
    std::uint64_t initial_digest = 0;
    std::vector<TraceStep> steps;
    std::optional<std::size_t> loop_start;  // index into states: 0 = initial, k = after step k-1

    bool operator==(const Trace&) const = default;
};

enum class VerdictKind : std::uint8_t {
    SafetyPass,
    SafetyFail,
    Deadlock,
    LivenessPass,
    LivenessFail,
    LimitExceeded,
};

const char* to_string(VerdictKind k);

struct Stats {
    std::uint64_t states = 0;
    std::uint64_t transitions = 0;
    std::uint64_t max_depth = 0;
    double seconds = 0.0;

    bool operator==(const Stats&) const = default;
};

struct Verdict {
    VerdictKind kind = VerdictKind::SafetyPass;
    std::optional<Violation> violation;
    std::optional<Trace> trace;
    std::string starving;  // LivenessFail: name of the starving task
    std::string limit;     // LimitExceeded: "states" or "depth"
    std::string invariant_failure;  // first invariant breach seen (empty = none)
    Stats stats;

    bool pass() const { return kind == VerdictKind::SafetyPass || kind == VerdictKind::LivenessPass; }
    bool inconclusive() const { return kind == VerdictKind::LimitExceeded; }
};

std::uint64_t state_digest(const StateCodec& codec, const GlobalState& s);
std::uint64_t config_hash(const App& app);

Verdict check_safety(const App& app, const ExploreOptions& options = {});
Verdict check_liveness(const App& app, const ExploreOptions& options = {});

/// Reachable state encodings (exact), for comparisons with the oracle.
std::vector<std::vector<std::uint8_t>> reachable_states(const App& app, const ExploreOptions& options = {});

/// Replays `trace` from the app's initial state. Returns the visited states
/// (initial state first). Throws ModelError(DigestMismatch) on divergence,
/// including a lasso whose last state differs from its loop_start state.
std::vector<GlobalState> replay(const App& app, const Trace& trace);

}  // namespace rtosmc
