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

#include "rtosmc/program.hpp"

#include "rtosmc/hw_interrupt.hpp"

namespace rtosmc {

const char* to_string(PropertyKind k) {
    static const char* names[] = {"S0", "S1", "S2", "S3", "S4", "S5", "S6"};
    return names[static_cast<std::size_t>(k)];
}

std::optional<PropertyKind> property_from_string(const std::string& s) {
    for (std::uint8_t i = 0; i < 7; ++i) {
        if (s == to_string(static_cast<PropertyKind>(i))) return static_cast<PropertyKind>(i);
    }
    return std::nullopt;
}

void Ctx::check(PropertyKind kind, bool ok, const std::string& what) {
    if (ok || violation_) return;
    violation_ = Violation{kind, self, node_name_, what};
}

void Ctx::mask(std::size_t line, bool on) { set_masked(s, line, on); }

void Ctx::pend(std::size_t line) { set_pending(s, line, true); }

Label ProgramBuilder::declare(const std::string& name) {
    if (prog_.nodes.size() >= 0xF0) throw ModelError(ModelError::Kind::BadConfig, "program too long");
    prog_.nodes.push_back(Node{name, {}, false, false});
    defined_.push_back(false);
    return Label{static_cast<std::uint8_t>(prog_.nodes.size() - 1)};
}

void ProgramBuilder::define(Label l, Command run, bool yields) {
    prog_.nodes[l.idx].run = std::move(run);
    prog_.nodes[l.idx].yields = yields;
    defined_[l.idx] = true;
}

Label ProgramBuilder::node(const std::string& name, Command run, bool yields) {
    const Label l = declare(name);
    define(l, std::move(run), yields);
    return l;
}

Label ProgramBuilder::call(const std::string& name, IpcIssue issue, IpcDone done) {
    const Label l = declare(name);
    define_call(l, std::move(issue), std::move(done));
    return l;
}

void ProgramBuilder::define_call(Label l, IpcIssue issue, IpcDone done) {
    const Label wake = declare(prog_.nodes[l.idx].name + "~wake");
    define(
        l,
        [issue = std::move(issue), done, wake](Ctx& c) {
            const IpcResult r = issue(c);
            if (r.outcome == Outcome::Pending) {
                c.go(wake);
            } else {
                done(c, r);
            }
        },
        true);
    define(wake, [done](Ctx& c) {
        auto& t = c.task();
        const IpcResult r{t.outcome, t.value};
        t.outcome = Outcome::None;
        t.value = 0;
        done(c, r);
    });
}

Program ProgramBuilder::build() {
    for (std::size_t i = 0; i < defined_.size(); ++i) {
        if (!defined_[i]) {
            throw ModelError(ModelError::Kind::BadConfig, "label declared but not defined: " + prog_.nodes[i].name);
        }
    }
    return prog_;
}

Program make_pendsv_program(UnitId id) {
    ProgramBuilder b(id);
    b.node("SET_TOP", [](Ctx& c) { pendsv_set_top(c.layout, c.s); });
    b.node("ExpReturn", [](Ctx& c) { apply_exception_return(c.layout, c.s, c.self); });
    return b.build();
}

Program make_systick_program(UnitId id) {
    ProgramBuilder b(id);
    b.node("tick", [](Ctx& c) { systick_body(c.layout, c.s); });
    b.node("ExpReturn", [](Ctx& c) { apply_exception_return(c.layout, c.s, c.self); });
    return b.build();
}

}  // namespace rtosmc
