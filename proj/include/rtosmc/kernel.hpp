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

// Scheduler model: task bookkeeping, task election, the PendSV and SysTick
// handler bodies, and the task-level kernel calls (yield, delay, suspend,
// resume).

#include "rtosmc/hw_interrupt.hpp"
#include "rtosmc/state.hpp"

#include <vector>

namespace rtosmc {

/// Fresh state: every task Ready at its base priority, IPC objects at their
/// initial counts, and the first election already made (the electee runs).
GlobalState initial_state(const SystemLayout& layout, const std::vector<UnitId>& suspended = {});

bool schedulable(const TaskRecord& t);

inline constexpr UnitId kNoTask = UnitId{kNone};

/// Highest-effective-priority schedulable task; round-robin within the top
/// level relative to that level's previous electee. kNoTask if none.
UnitId next_task_id(const SystemLayout& layout, const GlobalState& s);

/// PendSV first command: replace the stack top with the electee.
void pendsv_set_top(const SystemLayout& layout, GlobalState& s);

/// SysTick body: age delays and block timeouts, wake expired tasks and pend
/// PendSV according to the policy.
void systick_body(const SystemLayout& layout, GlobalState& s);

/// Latch the SysTick line. Caller checks that it is not already pending.
void trigger_systick(const SystemLayout& layout, GlobalState& s);
bool systick_trigger_enabled(const SystemLayout& layout, const GlobalState& s);

void yield(const SystemLayout& layout, GlobalState& s, UnitId id);
void delay_task(const SystemLayout& layout, GlobalState& s, UnitId id, std::uint8_t ticks);
void suspend_task(const SystemLayout& layout, GlobalState& s, UnitId by, UnitId target);
void resume_task(const SystemLayout& layout, GlobalState& s, UnitId by, UnitId target);

/// Make a Blocked/Delayed/Suspended task Ready. Returns true when the wake
/// should preempt `runner` under a preemptive policy (priority >= runner's).
bool make_ready(const SystemLayout& layout, GlobalState& s, UnitId task, UnitId runner);

void pend_pendsv(const SystemLayout& layout, GlobalState& s);

}  // namespace rtosmc
