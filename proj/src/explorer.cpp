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

#include "rtosmc/explorer.hpp"

#include "rtosmc/hw_interrupt.hpp"

#include <algorithm>

namespace rtosmc {

const char* to_string(VerdictKind k) {
    switch (k) {
    case VerdictKind::SafetyPass: return "SafetyPass";
    case VerdictKind::SafetyFail: return "SafetyFail";
    case VerdictKind::Deadlock: return "Deadlock";
    case VerdictKind::LivenessPass: return "LivenessPass";
    case VerdictKind::LivenessFail: return "LivenessFail";
    case VerdictKind::LimitExceeded: return "LimitExceeded";
    }
    return "?";
}

std::string_view step_label(const App& app, UnitId unit, std::uint8_t ordinal) {
    if (ordinal == kEntryOrdinal) return "entry";
    if (ordinal == kTriggerOrdinal) return "trigger";
    return app.program(unit).nodes.at(ordinal).name;
}

namespace {

Step run_command(const App& app, const GlobalState& s, UnitId u) {
    const auto& prog = app.program(u);
    const std::uint8_t pc = s.pc[raw(u)];
    const Node& node = prog.nodes.at(pc);
    Step st;
    st.unit = u;
    st.ordinal = pc;
    st.next = s;
    Ctx ctx(app.layout, st.next, u, st.violation, node.name);
    node.run(ctx);
    if (auto n = ctx.next()) {
        st.next.pc[raw(u)] = *n;
    } else if (st.next.pc[raw(u)] == pc) {
        st.next.pc[raw(u)] = static_cast<std::uint8_t>((pc + 1) % prog.nodes.size());
    }
    if (app.layout.is_task(u)) {
        st.next.tick_armed = 1;
        if (node.progress) st.progress = raw(u);
    }
    return st;
}

}  // namespace

void successors(const App& app, const GlobalState& s, std::vector<Step>& out, bool reverse) {
    const auto& L = app.layout;
    out.clear();
    if (auto w = arbitrate(L, s, s.ep)) {
        Step st;
        st.unit = L.lines[*w].id;
        st.ordinal = kEntryOrdinal;
        st.next = s;
        apply_exception_entry(L, st.next, st.unit);
        out.push_back(std::move(st));
    } else if (!L.is_task(s.ep) || s.tasks[raw(s.ep)].life == Life::Running) {
        out.push_back(run_command(app, s, s.ep));
    }
    if (systick_trigger_enabled(L, s)) {
        Step st;
        st.unit = L.systick();
        st.ordinal = kTriggerOrdinal;
        st.trigger = true;
        st.next = s;
        trigger_systick(L, st.next);
        out.push_back(std::move(st));
    }
    std::sort(out.begin(), out.end(), [reverse](const Step& a, const Step& b) {
        const auto ka = std::make_pair(raw(a.unit), a.ordinal);
        const auto kb = std::make_pair(raw(b.unit), b.ordinal);
        return reverse ? kb < ka : ka < kb;
    });
}

Step apply_step(const App& app, const GlobalState& s, UnitId unit, std::uint8_t ordinal) {
    std::vector<Step> succ;
    successors(app, s, succ);
    for (auto& st : succ) {
        if (st.unit == unit && st.ordinal == ordinal) return std::move(st);
    }
    throw ModelError(ModelError::Kind::DigestMismatch,
                     "transition " + std::string(step_label(app, unit, ordinal)) + " of unit " +
                         std::to_string(raw(unit)) + " is not enabled");
}

std::uint64_t state_digest(const StateCodec& codec, const GlobalState& s) {
    std::uint8_t buf[512];
    const std::span<std::uint8_t> out(buf, codec.size());
    codec.encode(s, out);
    return digest_bytes(out);
}

std::uint64_t config_hash(const App& app) {
    const auto& t = app.config_text;
    return digest_bytes(std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(t.data()), t.size()));
}

namespace {

std::uint8_t ordinal_of(const App& app, UnitId unit, const std::string& label, std::size_t step) {
    if (raw(unit) >= app.programs.size()) {
        throw ModelError(ModelError::Kind::DigestMismatch, "step " + std::to_string(step) + ": unknown unit");
    }
    if (label == "entry") return kEntryOrdinal;
    if (label == "trigger") return kTriggerOrdinal;
    const auto& nodes = app.program(unit).nodes;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].name == label) return static_cast<std::uint8_t>(i);
    }
    throw ModelError(ModelError::Kind::DigestMismatch, "step " + std::to_string(step) + ": unknown label " + label);
}

}  // namespace

std::vector<GlobalState> replay(const App& app, const Trace& trace) {
    const StateCodec codec(app.layout);
    std::vector<GlobalState> states{app.initial};
    if (trace.initial_digest != 0 && trace.initial_digest != state_digest(codec, app.initial)) {
        throw ModelError(ModelError::Kind::DigestMismatch, "initial state digest differs");
    }
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const auto& ts = trace.steps[i];
        const auto ord = ordinal_of(app, ts.unit, ts.label, i);
        Step st;
        try {
            st = apply_step(app, states.back(), ts.unit, ord);
        } catch (const ModelError& e) {
            throw ModelError(ModelError::Kind::DigestMismatch, "step " + std::to_string(i) + ": " + e.what());
        }
        if (state_digest(codec, st.next) != ts.digest) {
            throw ModelError(ModelError::Kind::DigestMismatch, "step " + std::to_string(i) + ": digest differs");
        }
        states.push_back(std::move(st.next));
    }
    if (trace.loop_start) {
        if (*trace.loop_start >= states.size() || !(states[*trace.loop_start] == states.back())) {
            throw ModelError(ModelError::Kind::DigestMismatch, "lasso does not close at loop_start");
        }
    }
    return states;
}

}  // namespace rtosmc
