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

#include "rtosmc/types.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace rtosmc {

struct TaskRecord {
    Life life = Life::Ready;
    std::uint8_t counter = 0;  // delay ticks, or block timeout (kForever = no timeout)
    std::uint8_t blocked_on = kNone;
    BlockKind block_kind = BlockKind::None;
    std::uint8_t effective_priority = 0;
    Outcome outcome = Outcome::None;
    std::uint8_t value = 0;  // last received message, or the staged message of a blocked sender

    bool operator==(const TaskRecord&) const = default;
};

/// Queue or lock contents. `count` is the queue length or the lock counter.
struct IpcObject {
    std::uint8_t count = 0;
    std::array<std::uint8_t, kMaxQueueCapacity> buffer{};
    std::uint8_t holder = kNone;
    std::uint8_t holder_base = 0;
    std::uint8_t nwait = 0;
    std::array<UnitId, kMaxTasks> waiters{};

    bool operator==(const IpcObject&) const = default;
};

/// Complete snapshot of the modeled system. Only byte-sized fields, so the
/// struct has no padding and equality is field-wise.
struct GlobalState {
    UnitId ep{};
    std::uint8_t depth = 0;
    std::array<UnitId, kStackCapacity> stack{};
    std::uint8_t pending = 0;  // bit i = interrupt line i
    std::uint8_t masked = 0;
    std::uint8_t tick_armed = 0;
    std::array<std::uint8_t, kMaxPriorities> cursor{};
    std::array<std::uint8_t, kMaxUnits> pc{};
    std::array<TaskRecord, kMaxTasks> tasks{};
    std::array<IpcObject, kMaxIpc> ipc{};
    std::array<std::uint8_t, kMaxVars> vars{};

    bool operator==(const GlobalState&) const = default;
};

struct LineSpec {
    std::string name;
    UnitId id{};
    std::uint8_t priority = 0;  // lower value = more urgent
};

struct IpcSpec {
    enum class Kind : std::uint8_t { Queue, Lock };
    Kind kind = Kind::Queue;
    std::string name;
    std::uint8_t capacity = 1;   // queue
    std::uint8_t max_count = 1;  // lock
    std::uint8_t initial = 0;    // lock
    bool mutex = false;
};

struct Policy {
    PolicyKind kind = PolicyKind::PreemptiveSlice;
    bool idle_yields = true;

    bool preemptive() const { return kind != PolicyKind::Cooperative; }
    bool time_slicing() const { return kind == PolicyKind::PreemptiveSlice; }
};

struct KernelConfig {
    Policy policy;
    WaiterOrder waiter_order = WaiterOrder::Priority;
    std::uint8_t max_delay = 7;
    bool has_idle = true;  // task 0 is the idle task (never blocks, delays or suspends)
};

/// Static (immutable) description of the execution units and shared objects.
struct SystemLayout {
    std::vector<std::string> unit_names;           // tasks then handlers
    std::vector<std::uint8_t> base_priority;       // per task, higher = more important
    std::vector<LineSpec> lines;
    std::size_t pendsv_line = 0;
    std::size_t systick_line = 1;
    std::vector<IpcSpec> ipc;
    std::size_t n_vars = 0;
    std::vector<std::string> var_names;
    KernelConfig kernel;

    std::size_t n_tasks() const { return base_priority.size(); }
    std::size_t n_units() const { return unit_names.size(); }
    bool is_task(UnitId id) const { return raw(id) < n_tasks(); }
    bool is_handler(UnitId id) const { return !is_task(id) && raw(id) < n_units(); }
    std::size_t line_of(UnitId handler) const { return raw(handler) - n_tasks(); }
    UnitId pendsv() const { return lines[pendsv_line].id; }
    UnitId systick() const { return lines[systick_line].id; }
    const std::string& name(UnitId id) const { return unit_names.at(raw(id)); }
    std::size_t priority_levels() const;

    /// Throws ModelError(BadConfig) when a dimension exceeds the fixed state bounds.
    void validate() const;
};

/// Canonical, order-stable byte encoding of the parts of a state that the
/// layout uses. The encoded length is fixed for a given layout.
class StateCodec {
public:
    explicit StateCodec(const SystemLayout& layout);

    std::size_t size() const { return size_; }
    void encode(const GlobalState& s, std::span<std::uint8_t> out) const;
    std::vector<std::uint8_t> encode(const GlobalState& s) const;
    GlobalState decode(std::span<const std::uint8_t> in) const;

private:
    std::size_t n_tasks_ = 0;
    std::size_t n_units_ = 0;
    std::size_t n_levels_ = 0;
    std::size_t n_vars_ = 0;
    std::vector<IpcSpec> ipc_;
    std::size_t size_ = 0;
};

/// 64-bit FNV-1a over the canonical encoding.
std::uint64_t digest_bytes(std::span<const std::uint8_t> bytes);

std::string to_hex64(std::uint64_t v);
std::uint64_t from_hex64(const std::string& s);

}  // namespace rtosmc
