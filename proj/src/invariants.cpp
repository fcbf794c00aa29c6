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

#include "rtosmc/invariants.hpp"

#include "rtosmc/hw_interrupt.hpp"
#include "rtosmc/kernel.hpp"

#include <algorithm>
#include <string>

namespace rtosmc {

namespace {

std::string task_name(const App& app, std::size_t t) { return app.layout.unit_names[t]; }

bool handler_active(const SystemLayout& layout, const GlobalState& s) {
    if (layout.is_handler(s.ep)) return true;
    return s.depth > 0;
}

}  // namespace

std::optional<std::string> check_state_invariants(const App& app, const GlobalState& s) {
    const auto& L = app.layout;
    const std::size_t n = L.n_tasks();

    if (s.depth > kStackCapacity) return "exception stack deeper than its capacity";
    for (std::size_t i = s.depth; i < kStackCapacity; ++i) {
        if (raw(s.stack[i]) != 0) return "stale entry above the stack top";
    }
    if (raw(s.ep) >= L.n_units()) return "EP names no unit";
    if (s.depth > 0 && !L.is_task(s.stack[0])) return "stack bottom is not a task";
    const std::uint8_t line_bits = static_cast<std::uint8_t>((1U << L.lines.size()) - 1);
    if ((s.pending & ~line_bits) != 0 || (s.masked & ~line_bits) != 0) return "pending/masked bit for a missing line";

    std::size_t running = 0;
    for (std::size_t t = 0; t < n; ++t) running += s.tasks[t].life == Life::Running;
    if (running > 1) return "more than one Running task";
    const UnitId cur = current_task(L, s);
    const auto& cr = s.tasks[raw(cur)];
    if (running == 1 && cr.life != Life::Running) return "the Running task is not the current task";
    if (cr.life == Life::Ready && !handler_active(L, s)) return "current task Ready with no handler active";
    if (!schedulable(cr) && !handler_active(L, s) && !is_pending(s, L.pendsv_line) &&
        next_task_id(L, s) != kNoTask) {
        return "current task " + task_name(app, raw(cur)) + " cannot run and no PendSV is pending";
    }

    std::vector<int> seen(n, 0);
    for (std::size_t k = 0; k < L.ipc.size(); ++k) {
        const auto& spec = L.ipc[k];
        const auto& o = s.ipc[k];
        if (o.nwait > n) return "waiting list longer than the task count in " + spec.name;
        for (std::size_t w = 0; w < o.nwait; ++w) {
            const auto id = raw(o.waiters[w]);
            if (id >= n) return "non-task in waiting list of " + spec.name;
            ++seen[id];
            if (s.tasks[id].blocked_on != k) return task_name(app, id) + " waits on " + spec.name + " but names another object";
        }
        for (std::size_t w = o.nwait; w < kMaxTasks; ++w) {
            if (raw(o.waiters[w]) != 0) return "stale waiter slot in " + spec.name;
        }
        if (spec.kind == IpcSpec::Kind::Queue) {
            if (o.count > spec.capacity) return "queue " + spec.name + " over capacity";
            for (std::size_t b = o.count; b < kMaxQueueCapacity; ++b) {
                if (o.buffer[b] != 0) return "stale buffer slot in " + spec.name;
            }
        } else {
            if (o.count > spec.max_count) return "lock " + spec.name + " above max_count";
            if (spec.mutex) {
                if ((o.holder != kNone) != (o.count == 0)) return "mutex " + spec.name + " holder set but count is not 0";
                if (o.holder != kNone) {
                    if (o.holder >= n) return "mutex holder is not a task";
                    if (o.holder_base != L.base_priority[o.holder]) return "mutex holder base priority mismatch";
                    std::uint8_t top = 0;
                    for (std::size_t w = 0; w < o.nwait; ++w) {
                        top = std::max(top, s.tasks[raw(o.waiters[w])].effective_priority);
                    }
                    if (s.tasks[o.holder].effective_priority < top) {
                        return "holder of " + spec.name + " below the priority of its waiters";
                    }
                }
            }
        }
    }

    for (std::size_t t = 0; t < n; ++t) {
        const auto& r = s.tasks[t];
        if (r.effective_priority < L.base_priority[t]) return task_name(app, t) + " below its base priority";
        switch (r.life) {
        case Life::Delayed:
            if (r.counter == 0 || r.counter > L.kernel.max_delay) return task_name(app, t) + " delay counter out of range";
            break;
        case Life::Blocked:
            if (r.counter == 0 || (r.counter != kForever && r.counter > L.kernel.max_delay)) {
                return task_name(app, t) + " block timeout out of range";
            }
            if (seen[t] != 1) return task_name(app, t) + " Blocked but listed " + std::to_string(seen[t]) + " times";
            if (r.block_kind == BlockKind::None) return task_name(app, t) + " Blocked without a block kind";
            if (r.outcome != Outcome::Pending) return task_name(app, t) + " Blocked with a settled outcome";
            break;
        default:
            if (r.counter != 0 || r.blocked_on != kNone || r.block_kind != BlockKind::None) {
                return task_name(app, t) + " keeps wait bookkeeping while not blocked";
            }
            if (seen[t] != 0) return task_name(app, t) + " listed as a waiter while not blocked";
            break;
        }
        if (t == 0 && app.layout.kernel.has_idle && !schedulable(r)) return "idle task left the ready set";
    }

    if (app.invariant) {
        if (auto e = app.invariant(s)) return *e;
    }
    return std::nullopt;
}

std::optional<std::string> check_transition_invariants(const App& app, const GlobalState& pre, const Step& step) {
    const auto& L = app.layout;
    const bool tick_body = step.unit == L.systick() && step.ordinal == 0;
    for (std::size_t t = 0; t < L.n_tasks(); ++t) {
        const auto& a = pre.tasks[t];
        const auto& b = step.next.tasks[t];
        const bool timed = a.life == Life::Delayed || (a.life == Life::Blocked && a.counter != kForever);
        if (!timed) continue;
        if (tick_body) {
            if (a.counter == 1) {
                if (b.life != Life::Ready) return task_name(app, t) + " did not wake when its counter ran out";
            } else if (b.life != a.life || b.counter != a.counter - 1) {
                return task_name(app, t) + " counter did not decrease by one on a tick";
            }
        } else if (b.life == a.life && b.counter != a.counter) {
            return task_name(app, t) + " counter changed outside the SysTick body";
        }
    }
    return std::nullopt;
}

}  // namespace rtosmc
