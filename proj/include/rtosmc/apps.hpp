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

// The eight example applications (PollQ, Semtest, BlockQ, QPeek, Dynamic,
// Countsem, Recmutex, GenQTest) as unit programs with embedded property
// checks and progress labels.

#include "rtosmc/program.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace rtosmc {

/// A complete model: layout, one program per unit (index = UnitId), the
/// initial state, and what to check.
struct App {
    std::string name;
    SystemLayout layout;
    std::vector<Program> programs;
    GlobalState initial;
    std::set<PropertyKind> properties;
    std::vector<UnitId> live_tasks;  // tasks whose progress labels the liveness formula ranges over
    bool starred = false;            // extra yields under cooperative scheduling
    /// Application-level state predicate (queue contents vs. sequence
    /// counters and similar). Returns a description on failure.
    std::function<std::optional<std::string>(const GlobalState&)> invariant;
    /// Canonical text of the effective configuration; hashed into trace headers.
    std::string config_text;

    const Program& program(UnitId id) const { return programs.at(raw(id)); }
};

struct AppOptions {
    PolicyKind policy = PolicyKind::PreemptiveSlice;
    WaiterOrder waiter_order = WaiterOrder::Priority;
    std::optional<bool> idle_yields;  // unset = the policy default (true)
    bool with_check_task = false;
    bool fix_delay = false;  // Countsem: delay inserted after each round (the proposed fix)
    std::map<std::string, int> params;  // scale-constant overrides, by name

    int param(const std::string& key, int fallback) const;
};

const std::vector<std::string>& app_names();

/// Throws ModelError(UnknownApp) for names outside app_names() (matching is
/// case-insensitive).
App build_app(const std::string& name, const AppOptions& options);

/// Scale constants an app reads, with their defaults.
std::map<std::string, int> default_params(const std::string& name);

/// Property kinds an app checks.
std::set<PropertyKind> table_properties(const std::string& name);

/// First failing predicate among `checks`, evaluated on `s`.
struct PropertyCheck {
    PropertyKind kind;
    std::string label;
    std::function<bool(const GlobalState&)> predicate;
};
std::optional<Violation> evaluate_checks(const GlobalState& s, const std::vector<PropertyCheck>& checks);

/// Shared helpers for assembling an App from task programs.
class AppAssembler {
public:
    AppAssembler(std::string name, const AppOptions& options);

    UnitId add_task(const std::string& name, std::uint8_t priority);
    std::size_t add_queue(const std::string& name, std::uint8_t capacity);
    std::size_t add_lock(const std::string& name, std::uint8_t max_count, std::uint8_t initial, bool mutex);
    std::size_t add_var(const std::string& name, std::uint8_t initial = 0);
    /// Extra interrupt line after PendSV and SysTick; `make` receives its UnitId.
    void add_line(const std::string& name, std::uint8_t priority, std::function<Program(UnitId)> make);
    void set_program(UnitId id, Program p);
    void set_live(std::vector<UnitId> tasks) { live_ = std::move(tasks); }
    void start_suspended(UnitId id) { suspended_.push_back(id); }
    void set_max_delay(std::uint8_t ticks) { layout_.kernel.max_delay = ticks; }
    /// Task 0 is an ordinary task: it may delay, block and be suspended.
    void no_idle() { layout_.kernel.has_idle = false; }

    const AppOptions& options() const { return options_; }
    const Policy& policy() const { return layout_.kernel.policy; }
    bool cooperative() const { return !layout_.kernel.policy.preemptive(); }

    /// Idle task program: loops, yielding when the policy lets it.
    Program idle_program() const;

    App finish(std::set<PropertyKind> properties, bool starred);

    std::function<std::optional<std::string>(const GlobalState&)> invariant;

private:
    std::string name_;
    AppOptions options_;
    SystemLayout layout_;
    std::vector<std::optional<Program>> programs_;
    std::vector<std::uint8_t> var_init_;
    std::vector<std::pair<LineSpec, std::function<Program(UnitId)>>> extra_lines_;
    std::vector<UnitId> live_;
    std::vector<UnitId> suspended_;
};

}  // namespace rtosmc
