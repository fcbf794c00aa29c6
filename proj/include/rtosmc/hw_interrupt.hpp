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

// Cortex-M style interrupt arbitration: pending/masked lines, exception
// entry and return, tail chaining. All functions are pure transformations
// of a GlobalState against a static SystemLayout.

#include "rtosmc/state.hpp"

#include <optional>

namespace rtosmc {

/// View of one interrupt line inside a state.
struct InterruptLine {
    UnitId id{};
    bool pending = false;
    bool masked = false;
    std::uint8_t priority = 0;
};

InterruptLine line_view(const SystemLayout& layout, const GlobalState& s, std::size_t line);

bool is_pending(const GlobalState& s, std::size_t line);
bool is_masked(const GlobalState& s, std::size_t line);
void set_pending(GlobalState& s, std::size_t line, bool on);
void set_masked(GlobalState& s, std::size_t line, bool on);

/// True iff `line` may preempt `current`. Tasks are always preemptable; a
/// handler only by a strictly more urgent line.
bool prioritizing(const SystemLayout& layout, const InterruptLine& line, UnitId current);

/// The line that wins arbitration for entry over `current`, if any: most
/// urgent first, equal urgency broken by the lowest UnitId.
std::optional<std::size_t> arbitrate(const SystemLayout& layout, const GlobalState& s, UnitId current);

/// Entry transition for `line`; nullopt when the guard
/// (pending && !masked && prioritizing) does not hold.
std::optional<GlobalState> irq_step(const SystemLayout& layout, const GlobalState& s, std::size_t line);

/// Push EP, clear the line's pending flag, switch EP to the handler.
/// Throws ModelError(StackOverflow) when the stack is full.
GlobalState exception_entry(const SystemLayout& layout, const GlobalState& s, UnitId handler);

/// Handler `handler` finishes: tail-chains into a qualifying pending line
/// (stack unchanged) or pops the stack into EP. Throws
/// ModelError(StackUnderflow) on an empty stack.
GlobalState exception_return(const SystemLayout& layout, const GlobalState& s, UnitId handler);

/// In-place variants used by the kernel's handler programs.
void apply_exception_entry(const SystemLayout& layout, GlobalState& s, UnitId handler);
void apply_exception_return(const SystemLayout& layout, GlobalState& s, UnitId handler);

/// The task the processor returns to once every active handler finishes.
UnitId current_task(const SystemLayout& layout, const GlobalState& s);

}  // namespace rtosmc
