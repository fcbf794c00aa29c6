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

#include "rtosmc/trace_check.hpp"

namespace rtosmc {

namespace {

bool is_command(const TraceStep& s) { return s.ordinal != kEntryOrdinal && s.ordinal != kTriggerOrdinal; }

}  // namespace

std::optional<VictimPattern> find_victim_pattern(const App& app, const Trace& trace) {
    const auto states = replay(app, trace);
    const auto& L = app.layout;
    const auto& steps = trace.steps;
    auto elected = [&](std::size_t i) { return states[i + 1].stack[states[i + 1].depth - 1]; };
    auto is_set_top = [&](const TraceStep& s) { return s.unit == L.pendsv() && s.label == "SET_TOP"; };

    for (std::size_t i = 0; i < steps.size(); ++i) {
        if (!is_set_top(steps[i])) continue;
        const UnitId victim = elected(i);
        std::optional<std::size_t> chain;
        for (std::size_t j = i + 1; j < steps.size(); ++j) {
            const auto& s = steps[j];
            if (s.unit == victim && is_command(s)) break;
            if (s.unit == L.pendsv() && s.label == "ExpReturn" && states[j + 1].ep == L.systick()) chain = j;
            if (is_set_top(s)) {
                if (chain && elected(j) != victim) return VictimPattern{i, *chain, j, victim, elected(j)};
                break;
            }
        }
    }
    return std::nullopt;
}

LoopSummary summarize_loop(const App& app, const Trace& trace) {
    if (!trace.loop_start) throw ModelError(ModelError::Kind::BadConfig, "trace has no loop");
    replay(app, trace);
    LoopSummary out;
    for (std::size_t i = *trace.loop_start; i < trace.steps.size(); ++i) {
        const auto& s = trace.steps[i];
        ++out.steps;
        if (s.ordinal == kTriggerOrdinal) {
            ++out.triggers;
            continue;
        }
        if (s.ordinal == kEntryOrdinal) continue;
        const auto& name = app.layout.name(s.unit);
        const Node& node = app.program(s.unit).nodes.at(s.ordinal);
        ++out.commands[name];
        if (node.yields) ++out.yields[name];
        if (node.progress) ++out.progress[name];
    }
    return out;
}

}  // namespace rtosmc
