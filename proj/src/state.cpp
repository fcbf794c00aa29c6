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

#include "rtosmc/state.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <stdexcept>

namespace rtosmc {

const char* to_string(Life l) {
    switch (l) {
    case Life::Ready: return "Ready";
    case Life::Running: return "Running";
    case Life::Delayed: return "Delayed";
    case Life::Suspended: return "Suspended";
    case Life::Blocked: return "Blocked";
    }
    return "?";
}

std::optional<PolicyKind> policy_from_string(const std::string& s) {
    std::string k;
    for (const char ch : s) {
        if (ch != '-' && ch != '_') k.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    }
    if (k == "cooperative" || k == "coop") return PolicyKind::Cooperative;
    if (k == "preemptive" || k == "preemptivenoslice" || k == "noslice") return PolicyKind::PreemptiveNoSlice;
    if (k == "timeslice" || k == "preemptiveslice" || k == "slice") return PolicyKind::PreemptiveSlice;
    return std::nullopt;
}

const char* to_string(Outcome o) {
    switch (o) {
    case Outcome::None: return "None";
    case Outcome::Pending: return "Pending";
    case Outcome::Ok: return "Ok";
    case Outcome::Expired: return "Expired";
    }
    return "?";
}

const char* to_string(PolicyKind p) {
    switch (p) {
    case PolicyKind::Cooperative: return "cooperative";
    case PolicyKind::PreemptiveNoSlice: return "preemptive";
    case PolicyKind::PreemptiveSlice: return "timeslice";
    }
    return "?";
}

std::size_t SystemLayout::priority_levels() const {
    std::uint8_t top = 0;
    for (auto p : base_priority) top = std::max(top, p);
    return static_cast<std::size_t>(top) + 1;
}

void SystemLayout::validate() const {
    auto fail = [](const std::string& m) { throw ModelError(ModelError::Kind::BadConfig, m); };
    if (n_tasks() == 0 || n_tasks() > kMaxTasks) fail("task count out of range");
    if (lines.size() < 2 || lines.size() > kMaxLines) fail("interrupt line count out of range");
    if (n_units() != n_tasks() + lines.size()) fail("unit table does not match tasks + lines");
    if (ipc.size() > kMaxIpc) fail("too many IPC objects");
    if (n_vars > kMaxVars) fail("too many app variables");
    if (priority_levels() > kMaxPriorities) fail("too many priority levels");
    if (base_priority[0] != 0) fail("idle task must have priority 0");
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (raw(lines[i].id) != n_tasks() + i) fail("line ids must follow the task ids");
    }
    if (lines[pendsv_line].priority != lines[systick_line].priority) {
        fail("PendSV and SysTick must share a priority");
    }
    for (const auto& o : ipc) {
        if (o.kind == IpcSpec::Kind::Queue && (o.capacity == 0 || o.capacity > kMaxQueueCapacity)) {
            fail("queue capacity out of range: " + o.name);
        }
        if (o.kind == IpcSpec::Kind::Lock) {
            if (o.initial > o.max_count) fail("lock initial count above max: " + o.name);
            if (o.mutex && o.max_count != 1) fail("mutex must have max_count 1: " + o.name);
        }
    }
    if (kernel.max_delay == 0 || kernel.max_delay >= kForever) fail("max_delay out of range");
}

StateCodec::StateCodec(const SystemLayout& layout)
    : n_tasks_(layout.n_tasks()),
      n_units_(layout.n_units()),
      n_levels_(layout.priority_levels()),
      n_vars_(layout.n_vars),
      ipc_(layout.ipc) {
    size_ = 1 + 1 + kStackCapacity + 3 + n_levels_ + n_units_ + n_tasks_ * 7 + n_vars_;
    for (const auto& o : ipc_) {
        size_ += 1;  // count
        if (o.kind == IpcSpec::Kind::Queue) size_ += o.capacity;
        if (o.mutex) size_ += 2;
        size_ += 1 + n_tasks_;  // waiters
    }
}

void StateCodec::encode(const GlobalState& s, std::span<std::uint8_t> out) const {
    std::size_t i = 0;
    auto put = [&](std::uint8_t b) { out[i++] = b; };
    put(raw(s.ep));
    put(s.depth);
    for (auto e : s.stack) put(raw(e));
    put(s.pending);
    put(s.masked);
    put(s.tick_armed);
    for (std::size_t l = 0; l < n_levels_; ++l) put(s.cursor[l]);
    for (std::size_t u = 0; u < n_units_; ++u) put(s.pc[u]);
    for (std::size_t t = 0; t < n_tasks_; ++t) {
        const auto& r = s.tasks[t];
        put(static_cast<std::uint8_t>(r.life));
        put(r.counter);
        put(r.blocked_on);
        put(static_cast<std::uint8_t>(r.block_kind));
        put(r.effective_priority);
        put(static_cast<std::uint8_t>(r.outcome));
        put(r.value);
    }
    for (std::size_t k = 0; k < ipc_.size(); ++k) {
        const auto& o = s.ipc[k];
        put(o.count);
        if (ipc_[k].kind == IpcSpec::Kind::Queue) {
            for (std::size_t b = 0; b < ipc_[k].capacity; ++b) put(o.buffer[b]);
        }
        if (ipc_[k].mutex) {
            put(o.holder);
            put(o.holder_base);
        }
        put(o.nwait);
        for (std::size_t w = 0; w < n_tasks_; ++w) put(raw(o.waiters[w]));
    }
    for (std::size_t v = 0; v < n_vars_; ++v) put(s.vars[v]);
}

std::vector<std::uint8_t> StateCodec::encode(const GlobalState& s) const {
    std::vector<std::uint8_t> out(size_);
    encode(s, out);
    return out;
}

GlobalState StateCodec::decode(std::span<const std::uint8_t> in) const {
    if (in.size() != size_) throw std::invalid_argument("encoded state has the wrong length");
    GlobalState s;
    std::size_t i = 0;
    auto get = [&]() { return in[i++]; };
    s.ep = UnitId{get()};
    s.depth = get();
    for (auto& e : s.stack) e = UnitId{get()};
    s.pending = get();
    s.masked = get();
    s.tick_armed = get();
    for (std::size_t l = 0; l < n_levels_; ++l) s.cursor[l] = get();
    for (std::size_t l = n_levels_; l < kMaxPriorities; ++l) s.cursor[l] = kNone;
    for (std::size_t u = 0; u < n_units_; ++u) s.pc[u] = get();
    for (std::size_t t = 0; t < n_tasks_; ++t) {
        auto& r = s.tasks[t];
        r.life = static_cast<Life>(get());
        r.counter = get();
        r.blocked_on = get();
        r.block_kind = static_cast<BlockKind>(get());
        r.effective_priority = get();
        r.outcome = static_cast<Outcome>(get());
        r.value = get();
    }
    for (std::size_t k = 0; k < ipc_.size(); ++k) {
        auto& o = s.ipc[k];
        o.count = get();
        if (ipc_[k].kind == IpcSpec::Kind::Queue) {
            for (std::size_t b = 0; b < ipc_[k].capacity; ++b) o.buffer[b] = get();
        }
        if (ipc_[k].mutex) {
            o.holder = get();
            o.holder_base = get();
        }
        o.nwait = get();
        for (std::size_t w = 0; w < n_tasks_; ++w) o.waiters[w] = UnitId{get()};
    }
    for (std::size_t v = 0; v < n_vars_; ++v) s.vars[v] = get();
    return s;
}

std::uint64_t digest_bytes(std::span<const std::uint8_t> bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (auto b : bytes) {
        h ^= b;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string to_hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::uint64_t from_hex64(const std::string& s) {
    return std::stoull(s, nullptr, 16);
}

}  // namespace rtosmc
