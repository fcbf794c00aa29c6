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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace rtosmc {

/// Index into the execution-unit table. Tasks come first (the idle task is
/// always 0), interrupt handlers follow.
enum class UnitId : std::uint8_t {};

constexpr std::uint8_t raw(UnitId id) { return static_cast<std::uint8_t>(id); }
constexpr UnitId unit(std::size_t v) { return UnitId{static_cast<std::uint8_t>(v)}; }

inline constexpr UnitId kIdleTask = UnitId{0};
inline constexpr std::uint8_t kNone = 0xFF;

inline constexpr std::size_t kMaxTasks = 8;
inline constexpr std::size_t kMaxLines = 4;
inline constexpr std::size_t kMaxUnits = kMaxTasks + kMaxLines;
inline constexpr std::size_t kStackCapacity = 4;
inline constexpr std::size_t kMaxIpc = 4;
inline constexpr std::size_t kMaxQueueCapacity = 3;
inline constexpr std::size_t kMaxVars = 8;
inline constexpr std::size_t kMaxPriorities = 8;

/// Block duration meaning "wait forever".
inline constexpr std::uint8_t kForever = 0xFF;

enum class Life : std::uint8_t { Ready, Running, Delayed, Suspended, Blocked };

enum class Outcome : std::uint8_t { None, Pending, Ok, Expired };

enum class BlockKind : std::uint8_t { None, Send, Receive, Peek, Take };

enum class PolicyKind : std::uint8_t { Cooperative, PreemptiveNoSlice, PreemptiveSlice };

enum class WaiterOrder : std::uint8_t { Fifo, Priority };

const char* to_string(Life l);
const char* to_string(Outcome o);
const char* to_string(PolicyKind p);

/// Accepts the short names ("cooperative", "preemptive", "timeslice") and the
/// long ones ("PreemptiveNoSlice", ...), case-insensitively.
std::optional<PolicyKind> policy_from_string(const std::string& s);

/// Raised for model-configuration bugs (not for modeled behaviour).
class ModelError : public std::runtime_error {
public:
    enum class Kind {
        StackOverflow,
        StackUnderflow,
        IllegalIdleBlock,
        MutexGiveByNonHolder,
        UnknownApp,
        BadConfig,
        DigestMismatch,
    };

    ModelError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

}  // namespace rtosmc
