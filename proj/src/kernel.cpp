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

#include "rtosmc/kernel.hpp"

#include "rtosmc/ipc.hpp"

#include <algorithm>
#include <optional>

namespace rtosmc {

namespace {

std::uint8_t eff(const GlobalState& s, UnitId t) { return s.tasks[raw(t)].effective_priority; }

void clear_wait(TaskRecord& r) {
    r.counter = 0;
    r.blocked_on = kNone;
    r.block_kind = BlockKind::None;
}

}  // namespace

GlobalState initial_state(const SystemLayout& layout, const std::vector<UnitId>& suspended) {
    GlobalState s;
    s.cursor.fill(kNone);
    for (std::size_t t = 0; t < layout.n_tasks(); ++t) {
        s.tasks[t].effective_priority = layout.base_priority[t];
    }
    for (const UnitId id : suspended) {
        if (layout.kernel.has_idle && id == kIdleTask) throw ModelError(ModelError::Kind::IllegalIdleBlock, "idle task may not start suspended");
        s.tasks[raw(id)].life = Life::Suspended;
    }
    for (std::size_t k = 0; k < layout.ipc.size(); ++k) {
        if (layout.ipc[k].kind == IpcSpec::Kind::Lock) s.ipc[k].count = layout.ipc[k].initial;
    }
    const UnitId first = next_task_id(layout, s);
    if (first == kNoTask) throw ModelError(ModelError::Kind::BadConfig, "no task is ready initially");
    s.tasks[raw(first)].life = Life::Running;
    s.cursor[eff(s, first)] = raw(first);
    s.ep = first;
    return s;
}

bool schedulable(const TaskRecord& t) { return t.life == Life::Ready || t.life == Life::Running; }

UnitId next_task_id(const SystemLayout& layout, const GlobalState& s) {
    int top = -1;
    for (std::size_t t = 0; t < layout.n_tasks(); ++t) {
        if (schedulable(s.tasks[t])) top = std::max<int>(top, s.tasks[t].effective_priority);
    }
    if (top < 0) return kNoTask;
    const std::uint8_t cur = s.cursor[static_cast<std::size_t>(top)];
    std::optional<std::size_t> first, after;
    for (std::size_t t = 0; t < layout.n_tasks(); ++t) {
        if (!schedulable(s.tasks[t]) || s.tasks[t].effective_priority != top) continue;
        if (!first) first = t;
        if (!after && cur != kNone && t > cur) after = t;
    }
    return unit(after ? *after : *first);
}

void pendsv_set_top(const SystemLayout& layout, GlobalState& s) {
    if (s.depth == 0) throw ModelError(ModelError::Kind::StackUnderflow, "PendSV with empty stack");
    UnitId& top = s.stack[s.depth - 1];
    if (!layout.is_task(top)) throw ModelError(ModelError::Kind::BadConfig, "PendSV nested over a handler");
    if (s.tasks[raw(top)].life == Life::Running) s.tasks[raw(top)].life = Life::Ready;
    const UnitId e = next_task_id(layout, s);
    if (e == kNoTask) return;  // nothing runnable: the preempted task stays on the stack
    top = e;
    s.cursor[eff(s, e)] = raw(e);
}

bool make_ready(const SystemLayout& layout, GlobalState& s, UnitId task, UnitId runner) {
    (void)layout;
    auto& r = s.tasks[raw(task)];
    r.life = Life::Ready;
    clear_wait(r);
    return eff(s, task) >= eff(s, runner);
}

void pend_pendsv(const SystemLayout& layout, GlobalState& s) { set_pending(s, layout.pendsv_line, true); }

void systick_body(const SystemLayout& layout, GlobalState& s) {
    const UnitId runner = current_task(layout, s);
    bool preempt = false;
    for (std::size_t t = 0; t < layout.n_tasks(); ++t) {
        auto& r = s.tasks[t];
        if (r.life == Life::Delayed) {
            if (--r.counter == 0) preempt |= make_ready(layout, s, unit(t), runner);
        } else if (r.life == Life::Blocked && r.counter != kForever) {
            if (--r.counter == 0) {
                remove_waiter(layout, s, unit(t));
                r.outcome = Outcome::Expired;
                preempt |= make_ready(layout, s, unit(t), runner);
            }
        }
    }
    const auto& policy = layout.kernel.policy;
    if (policy.time_slicing() || (policy.preemptive() && preempt)) pend_pendsv(layout, s);
}

void trigger_systick(const SystemLayout& layout, GlobalState& s) {
    set_pending(s, layout.systick_line, true);
    s.tick_armed = 0;
}

bool systick_trigger_enabled(const SystemLayout& layout, const GlobalState& s) {
    return s.tick_armed != 0 && !is_pending(s, layout.systick_line);
}

void yield(const SystemLayout& layout, GlobalState& s, UnitId id) {
    (void)id;
    pend_pendsv(layout, s);
}

void delay_task(const SystemLayout& layout, GlobalState& s, UnitId id, std::uint8_t ticks) {
    if (ticks == 0) {
        pend_pendsv(layout, s);
        return;
    }
    if (layout.kernel.has_idle && id == kIdleTask) throw ModelError(ModelError::Kind::IllegalIdleBlock, "idle task may not delay");
    if (ticks > layout.kernel.max_delay) {
        throw ModelError(ModelError::Kind::BadConfig, "delay above max_delay in " + layout.name(id));
    }
    auto& r = s.tasks[raw(id)];
    r.life = Life::Delayed;
    r.counter = ticks;
    pend_pendsv(layout, s);
}

void suspend_task(const SystemLayout& layout, GlobalState& s, UnitId by, UnitId target) {
    if (layout.kernel.has_idle && target == kIdleTask) throw ModelError(ModelError::Kind::IllegalIdleBlock, "idle task may not be suspended");
    auto& r = s.tasks[raw(target)];
    if (r.life == Life::Suspended) return;
    if (r.life == Life::Blocked) {
        remove_waiter(layout, s, target);
        r.outcome = Outcome::Expired;
    }
    r.life = Life::Suspended;
    clear_wait(r);
    if (target == by) pend_pendsv(layout, s);
}

void resume_task(const SystemLayout& layout, GlobalState& s, UnitId by, UnitId target) {
    if (s.tasks[raw(target)].life != Life::Suspended) return;
    const bool preempt = make_ready(layout, s, target, by);
    if (layout.kernel.policy.preemptive() && preempt) pend_pendsv(layout, s);
}

}  // namespace rtosmc
