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

// Thread-safe kernel objects: bounded message queues and counting locks
// (semaphores, and mutexes with single-level priority inheritance). Each
// object keeps one waiting-task list; a blocked task records which object
// and which operation it waits on.
//
// A task woken because its data became ready completes its operation at
// wake time (message copied, lock handed over); its outcome slot then reads
// Ok. A task woken by timeout reads Expired.

#include "rtosmc/state.hpp"

namespace rtosmc {

/// Result of a call as seen by the caller. Pending means the caller blocked.
struct IpcResult {
    Outcome outcome = Outcome::None;
    std::uint8_t value = 0;
};

IpcResult send(const SystemLayout& layout, GlobalState& s, std::size_t q, UnitId id, std::uint8_t msg,
               std::uint8_t delay);
IpcResult receive(const SystemLayout& layout, GlobalState& s, std::size_t q, UnitId id, std::uint8_t delay);
IpcResult peek(const SystemLayout& layout, GlobalState& s, std::size_t q, UnitId id, std::uint8_t delay);
IpcResult give(const SystemLayout& layout, GlobalState& s, std::size_t l, UnitId id);
IpcResult take(const SystemLayout& layout, GlobalState& s, std::size_t l, UnitId id, std::uint8_t delay);

/// Drop a blocked task from its object's waiting list (timeout or suspend)
/// and undo any priority it lent to a mutex holder.
void remove_waiter(const SystemLayout& layout, GlobalState& s, UnitId task);

/// Effective priority a mutex holder should have given its current waiters.
std::uint8_t inherited_priority(const SystemLayout& layout, const GlobalState& s, std::size_t l);

}  // namespace rtosmc
