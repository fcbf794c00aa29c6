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

#include "rtosmc/ipc.hpp"

#include "rtosmc/hw_interrupt.hpp"
#include "rtosmc/kernel.hpp"

#include <algorithm>

namespace rtosmc {

namespace {

bool is_mutex(const SystemLayout& layout, std::size_t l) {
    return layout.ipc[l].kind == IpcSpec::Kind::Lock && layout.ipc[l].mutex;
}

void push_waiter(const SystemLayout& layout, GlobalState& s, std::size_t k, UnitId id) {
    auto& o = s.ipc[k];
    std::size_t at = o.nwait;
    if (layout.kernel.waiter_order == WaiterOrder::Priority) {
        const auto p = s.tasks[raw(id)].effective_priority;
        at = 0;
        while (at < o.nwait && s.tasks[raw(o.waiters[at])].effective_priority >= p) ++at;
    }
    for (std::size_t i = o.nwait; i > at; --i) o.waiters[i] = o.waiters[i - 1];
    o.waiters[at] = id;
    ++o.nwait;
}

void erase_waiter_at(IpcObject& o, std::size_t at) {
    for (std::size_t i = at; i + 1 < o.nwait; ++i) o.waiters[i] = o.waiters[i + 1];
    o.waiters[--o.nwait] = UnitId{0};
}

void block(const SystemLayout& layout, GlobalState& s, std::size_t k, UnitId id, BlockKind kind, std::uint8_t delay) {
    if (layout.kernel.has_idle && id == kIdleTask) throw ModelError(ModelError::Kind::IllegalIdleBlock, "idle task may not block");
    if (delay != kForever && delay > layout.kernel.max_delay) {
        throw ModelError(ModelError::Kind::BadConfig, "block duration above max_delay in " + layout.name(id));
    }
    auto& r = s.tasks[raw(id)];
    r.life = Life::Blocked;
    r.counter = delay;
    r.blocked_on = static_cast<std::uint8_t>(k);
    r.block_kind = kind;
    r.outcome = Outcome::Pending;
    push_waiter(layout, s, k, id);
    pend_pendsv(layout, s);
}

void queue_append(IpcObject& o, std::uint8_t msg) { o.buffer[o.count++] = msg; }

std::uint8_t queue_pop(IpcObject& o) {
    const auto head = o.buffer[0];
    for (std::size_t i = 0; i + 1 < o.count; ++i) o.buffer[i] = o.buffer[i + 1];
    o.buffer[--o.count] = 0;
    return head;
}

// Wake the waiters of queue `k` whose operation can now complete. Returns
// true when a woken task should preempt the runner.
bool service_queue(const SystemLayout& layout, GlobalState& s, std::size_t k, UnitId runner) {
    auto& o = s.ipc[k];
    const auto cap = layout.ipc[k].capacity;
    bool preempt = false;
    for (;;) {
        std::size_t i = 0;
        for (; i < o.nwait; ++i) {
            const auto kind = s.tasks[raw(o.waiters[i])].block_kind;
            if ((kind == BlockKind::Send && o.count < cap) ||
                ((kind == BlockKind::Receive || kind == BlockKind::Peek) && o.count > 0)) {
                break;
            }
        }
        if (i == o.nwait) return preempt;
        const UnitId w = o.waiters[i];
        auto& r = s.tasks[raw(w)];
        switch (r.block_kind) {
        case BlockKind::Send: queue_append(o, r.value); break;
        case BlockKind::Receive: r.value = queue_pop(o); break;
        default: r.value = o.buffer[0]; break;
        }
        erase_waiter_at(o, i);
        r.outcome = Outcome::Ok;
        preempt |= make_ready(layout, s, w, runner);
    }
}

void acquire(const SystemLayout& layout, GlobalState& s, std::size_t l, UnitId id) {
    auto& o = s.ipc[l];
    --o.count;
    if (is_mutex(layout, l)) {
        o.holder = raw(id);
        o.holder_base = layout.base_priority[raw(id)];
    }
}

void finish(const SystemLayout& layout, GlobalState& s, bool preempt) {
    if (preempt && layout.kernel.policy.preemptive()) pend_pendsv(layout, s);
}

}  // namespace

std::uint8_t inherited_priority(const SystemLayout& layout, const GlobalState& s, std::size_t l) {
    const auto& o = s.ipc[l];
    if (o.holder == kNone) return 0;
    std::uint8_t p = o.holder_base;
    for (std::size_t i = 0; i < o.nwait; ++i) {
        p = std::max(p, s.tasks[raw(o.waiters[i])].effective_priority);
    }
    (void)layout;
    return p;
}

void remove_waiter(const SystemLayout& layout, GlobalState& s, UnitId task) {
    const auto k = s.tasks[raw(task)].blocked_on;
    if (k == kNone) return;
    auto& o = s.ipc[k];
    for (std::size_t i = 0; i < o.nwait; ++i) {
        if (o.waiters[i] == task) {
            erase_waiter_at(o, i);
            break;
        }
    }
    if (is_mutex(layout, k) && o.holder != kNone) {
        s.tasks[o.holder].effective_priority = inherited_priority(layout, s, k);
    }
}

IpcResult send(const SystemLayout& layout, GlobalState& s, std::size_t q, UnitId id, std::uint8_t msg,
               std::uint8_t delay) {
    auto& o = s.ipc[q];
    if (o.count < layout.ipc[q].capacity) {
        queue_append(o, msg);
        finish(layout, s, service_queue(layout, s, q, id));
        return {Outcome::Ok, msg};
    }
    if (delay == 0) return {Outcome::Expired, 0};
    s.tasks[raw(id)].value = msg;
    block(layout, s, q, id, BlockKind::Send, delay);
    return {Outcome::Pending, 0};
}

IpcResult receive(const SystemLayout& layout, GlobalState& s, std::size_t q, UnitId id, std::uint8_t delay) {
    auto& o = s.ipc[q];
    if (o.count > 0) {
        const auto v = queue_pop(o);
        finish(layout, s, service_queue(layout, s, q, id));
        return {Outcome::Ok, v};
    }
    if (delay == 0) return {Outcome::Expired, 0};
    block(layout, s, q, id, BlockKind::Receive, delay);
    return {Outcome::Pending, 0};
}

IpcResult peek(const SystemLayout& layout, GlobalState& s, std::size_t q, UnitId id, std::uint8_t delay) {
    const auto& o = s.ipc[q];
    if (o.count > 0) return {Outcome::Ok, o.buffer[0]};
    if (delay == 0) return {Outcome::Expired, 0};
    block(layout, s, q, id, BlockKind::Peek, delay);
    return {Outcome::Pending, 0};
}

IpcResult give(const SystemLayout& layout, GlobalState& s, std::size_t l, UnitId id) {
    auto& o = s.ipc[l];
    const bool mutex = is_mutex(layout, l);
    if (mutex && o.holder != raw(id)) {
        throw ModelError(ModelError::Kind::MutexGiveByNonHolder,
                         layout.name(id) + " gives mutex " + layout.ipc[l].name + " it does not hold");
    }
    if (o.count >= layout.ipc[l].max_count) return {Outcome::Expired, 0};
    ++o.count;
    bool preempt = false;
    if (mutex) {
        auto& r = s.tasks[raw(id)];
        const bool inherited = r.effective_priority != o.holder_base;
        r.effective_priority = o.holder_base;
        o.holder = kNone;
        o.holder_base = 0;
        preempt = inherited;
    }
    const UnitId runner = layout.is_task(id) ? id : current_task(layout, s);
    if (o.nwait > 0) {
        const UnitId w = o.waiters[0];
        erase_waiter_at(o, 0);
        acquire(layout, s, l, w);
        auto& r = s.tasks[raw(w)];
        r.outcome = Outcome::Ok;
        preempt |= make_ready(layout, s, w, runner);
        if (mutex) r.effective_priority = inherited_priority(layout, s, l);
    }
    finish(layout, s, preempt);
    return {Outcome::Ok, 0};
}

IpcResult take(const SystemLayout& layout, GlobalState& s, std::size_t l, UnitId id, std::uint8_t delay) {
    auto& o = s.ipc[l];
    if (o.count > 0) {
        acquire(layout, s, l, id);
        return {Outcome::Ok, 0};
    }
    if (delay == 0) return {Outcome::Expired, 0};
    block(layout, s, l, id, BlockKind::Take, delay);
    if (is_mutex(layout, l) && o.holder != kNone) {
        auto& h = s.tasks[o.holder].effective_priority;
        h = std::max(h, s.tasks[raw(id)].effective_priority);
    }
    return {Outcome::Pending, 0};
}

}  // namespace rtosmc
