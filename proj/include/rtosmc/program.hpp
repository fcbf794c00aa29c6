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

// Execution-unit programs: each unit is a list of atomic command nodes. A
// node's body runs against the global state through a Ctx and picks the next
// node; nodes may carry a progress label and embedded property checks.

#include "rtosmc/ipc.hpp"
#include "rtosmc/kernel.hpp"
#include "rtosmc/state.hpp"

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace rtosmc {

enum class PropertyKind : std::uint8_t { S0, S1, S2, S3, S4, S5, S6 };

const char* to_string(PropertyKind k);
std::optional<PropertyKind> property_from_string(const std::string& s);

struct Violation {
    PropertyKind kind = PropertyKind::S0;
    UnitId unit{};
    std::string label;
    std::string detail;

    bool operator==(const Violation&) const = default;
};

struct Label {
    std::uint8_t idx = 0;
};

class Ctx {
public:
    Ctx(const SystemLayout& layout, GlobalState& s, UnitId self, std::optional<Violation>& violation,
        const std::string& node_name)
        : layout(layout), s(s), self(self), violation_(violation), node_name_(node_name) {}

    const SystemLayout& layout;
    GlobalState& s;
    const UnitId self;

    void go(Label l) { next_ = l.idx; }
    std::optional<std::uint8_t> next() const { return next_; }

    std::uint8_t& var(std::size_t i) { return s.vars[i]; }
    TaskRecord& task() { return s.tasks[raw(self)]; }
    TaskRecord& task(UnitId id) { return s.tasks[raw(id)]; }
    const Policy& policy() const { return layout.kernel.policy; }
    bool cooperative() const { return !policy().preemptive(); }

    IpcResult send(std::size_t q, std::uint8_t msg, std::uint8_t delay) {
        return rtosmc::send(layout, s, q, self, msg, delay);
    }
    IpcResult receive(std::size_t q, std::uint8_t delay) { return rtosmc::receive(layout, s, q, self, delay); }
    IpcResult peek(std::size_t q, std::uint8_t delay) { return rtosmc::peek(layout, s, q, self, delay); }
    IpcResult give(std::size_t l) { return rtosmc::give(layout, s, l, self); }
    IpcResult take(std::size_t l, std::uint8_t delay) { return rtosmc::take(layout, s, l, self, delay); }
    void yield() { rtosmc::yield(layout, s, self); }
    void delay(std::uint8_t ticks) { delay_task(layout, s, self, ticks); }
    void suspend(UnitId target) { suspend_task(layout, s, self, target); }
    void suspend_self() { suspend_task(layout, s, self, self); }
    void resume(UnitId target) { resume_task(layout, s, self, target); }
    void mask(std::size_t line, bool on);
    void pend(std::size_t line);

    /// Embedded assertion. The first failing check of a command is kept.
    void check(PropertyKind kind, bool ok, const std::string& what = {});

private:
    std::optional<Violation>& violation_;
    const std::string& node_name_;
    std::optional<std::uint8_t> next_;
};

using Command = std::function<void(Ctx&)>;
using IpcIssue = std::function<IpcResult(Ctx&)>;
using IpcDone = std::function<void(Ctx&, IpcResult)>;

struct Node {
    std::string name;
    Command run;
    bool progress = false;  // executing this node is a Loc label of its unit
    bool yields = false;    // may give up the processor (yield, delay, block, suspend)
};

struct Program {
    UnitId unit{};
    std::vector<Node> nodes;
};

/// Builds one program. Labels can be declared before definition so bodies
/// may jump forward; every declared label must be defined before build().
class ProgramBuilder {
public:
    explicit ProgramBuilder(UnitId unit) { prog_.unit = unit; }

    Label declare(const std::string& name);
    void define(Label l, Command run, bool yields = false);
    Label node(const std::string& name, Command run, bool yields = false);
    void progress(Label l) { prog_.nodes[l.idx].progress = true; }

    /// A possibly-blocking IPC call. `done` sees the outcome either at once or,
    /// if the call blocked, when the task next runs (the auto-created
    /// "<name>~wake" node).
    Label call(const std::string& name, IpcIssue issue, IpcDone done);
    void define_call(Label l, IpcIssue issue, IpcDone done);

    Program build();

private:
    Program prog_;
    std::vector<bool> defined_;
};

Program make_pendsv_program(UnitId id);
Program make_systick_program(UnitId id);

}  // namespace rtosmc
