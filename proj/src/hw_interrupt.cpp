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

#include "rtosmc/hw_interrupt.hpp"

namespace rtosmc {

InterruptLine line_view(const SystemLayout& layout, const GlobalState& s, std::size_t line) {
    return InterruptLine{layout.lines[line].id, is_pending(s, line), is_masked(s, line), layout.lines[line].priority};
}

bool is_pending(const GlobalState& s, std::size_t line) { return (s.pending >> line) & 1U; }
bool is_masked(const GlobalState& s, std::size_t line) { return (s.masked >> line) & 1U; }

void set_pending(GlobalState& s, std::size_t line, bool on) {
    const auto bit = static_cast<std::uint8_t>(1U << line);
    s.pending = on ? (s.pending | bit) : (s.pending & ~bit);
}

void set_masked(GlobalState& s, std::size_t line, bool on) {
    const auto bit = static_cast<std::uint8_t>(1U << line);
    s.masked = on ? (s.masked | bit) : (s.masked & ~bit);
}

bool prioritizing(const SystemLayout& layout, const InterruptLine& line, UnitId current) {
    if (layout.is_task(current)) return true;
    const auto& running = layout.lines[layout.line_of(current)];
    return line.priority < running.priority;
}

std::optional<std::size_t> arbitrate(const SystemLayout& layout, const GlobalState& s, UnitId current) {
    std::optional<std::size_t> best;
    for (std::size_t l = 0; l < layout.lines.size(); ++l) {
        const auto v = line_view(layout, s, l);
        if (!v.pending || v.masked || !prioritizing(layout, v, current)) continue;
        // Lines are ordered by id, so a strict comparison keeps the lowest id on ties.
        if (!best || v.priority < layout.lines[*best].priority) best = l;
    }
    return best;
}

std::optional<GlobalState> irq_step(const SystemLayout& layout, const GlobalState& s, std::size_t line) {
    const auto v = line_view(layout, s, line);
    if (!v.pending || v.masked || !prioritizing(layout, v, s.ep)) return std::nullopt;
    return exception_entry(layout, s, v.id);
}

void apply_exception_entry(const SystemLayout& layout, GlobalState& s, UnitId handler) {
    if (s.depth >= kStackCapacity) {
        throw ModelError(ModelError::Kind::StackOverflow, "exception stack overflow entering " + layout.name(handler));
    }
    s.stack[s.depth++] = s.ep;
    set_pending(s, layout.line_of(handler), false);
    s.ep = handler;
    s.pc[raw(handler)] = 0;
}

GlobalState exception_entry(const SystemLayout& layout, const GlobalState& s, UnitId handler) {
    GlobalState next = s;
    apply_exception_entry(layout, next, handler);
    return next;
}

void apply_exception_return(const SystemLayout& layout, GlobalState& s, UnitId handler) {
    if (s.depth == 0) {
        throw ModelError(ModelError::Kind::StackUnderflow, "exception return with empty stack from " + layout.name(handler));
    }
    s.pc[raw(handler)] = 0;
    const UnitId top = s.stack[s.depth - 1];
    if (auto chained = arbitrate(layout, s, top)) {
        set_pending(s, *chained, false);
        s.ep = layout.lines[*chained].id;
        s.pc[raw(s.ep)] = 0;
        return;
    }
    s.ep = top;
    s.stack[--s.depth] = UnitId{0};
    if (layout.is_task(s.ep) && s.tasks[raw(s.ep)].life == Life::Ready) {
        s.tasks[raw(s.ep)].life = Life::Running;
    }
}

GlobalState exception_return(const SystemLayout& layout, const GlobalState& s, UnitId handler) {
    GlobalState next = s;
    apply_exception_return(layout, next, handler);
    return next;
}

UnitId current_task(const SystemLayout& layout, const GlobalState& s) {
    if (layout.is_task(s.ep)) return s.ep;
    for (std::size_t i = s.depth; i-- > 0;) {
        if (layout.is_task(s.stack[i])) return s.stack[i];
    }
    return kIdleTask;
}

}  // namespace rtosmc
