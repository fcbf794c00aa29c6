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

#include "rtosmc/explorer.hpp"
#include "rtosmc/invariants.hpp"

#include <chrono>
#include <vector>

namespace rtosmc::detail {

struct PathStep {
    UnitId unit{};
    std::uint8_t ordinal = 0;
    GlobalState after;
};

inline Trace make_trace(const App& app, const StateCodec& codec, const std::vector<PathStep>& path) {
    Trace t;
    t.app = app.name;
    t.policy = to_string(app.layout.kernel.policy.kind);
    t.config_hash = config_hash(app);
    t.initial_digest = state_digest(codec, app.initial);
    for (std::size_t i = 0; i < path.size(); ++i) {
        const auto& p = path[i];
        t.steps.push_back(TraceStep{static_cast<std::uint32_t>(i), p.unit, std::string(step_label(app, p.unit, p.ordinal)),
                                    p.ordinal, state_digest(codec, p.after)});
    }
    return t;
}

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

/// Records the first invariant breach (state or transition) into `out`.
inline void note_invariants(const App& app, const GlobalState& pre, const Step& st, bool fresh, std::string& out) {
    if (!out.empty()) return;
    if (auto e = check_transition_invariants(app, pre, st)) {
        out = *e;
        return;
    }
    if (fresh) {
        if (auto e = check_state_invariants(app, st.next)) out = *e;
    }
}

}  // namespace rtosmc::detail
