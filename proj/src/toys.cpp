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

#include "rtosmc/toys.hpp"

namespace rtosmc {

namespace {

using P = PropertyKind;

AppOptions with_policy(PolicyKind k, bool idle_yields = true) {
    AppOptions o;
    o.policy = k;
    o.idle_yields = idle_yields;
    return o;
}

App idle_only(const std::string& name, PolicyKind k, bool idle_yields) {
    AppAssembler a(name, with_policy(k, idle_yields));
    const UnitId idle = a.add_task("idle", 0);
    a.set_program(idle, a.idle_program());
    a.set_live({idle});
    return a.finish({}, false);
}

// One ordinary task that masks both kernel interrupts and then delays: the
// wake-up can never be delivered.
App mask_forever() {
    AppAssembler a("mask_forever", with_policy(PolicyKind::PreemptiveSlice));
    a.no_idle();
    const UnitId t = a.add_task("worker", 0);
    ProgramBuilder b(t);
    b.node("mask_tick", [](Ctx& c) { c.mask(1, true); });
    b.node("mask_switch", [](Ctx& c) { c.mask(0, true); });
    const Label d = b.node("sleep", [](Ctx& c) { c.delay(1); }, true);
    b.progress(d);
    a.set_program(t, b.build());
    a.set_live({t});
    return a.finish({}, false);
}

App mask_toggle() {
    AppAssembler a("mask_toggle", with_policy(PolicyKind::PreemptiveSlice));
    a.no_idle();
    const UnitId t = a.add_task("worker", 0);
    const auto v = a.add_var("inside");
    ProgramBuilder b(t);
    b.node("enter", [v](Ctx& c) {
        c.mask(1, true);
        c.var(v) = 1;
    });
    const Label leave = b.node("leave", [v](Ctx& c) {
        c.check(P::S0, c.var(v) == 1, "critical section lost its flag");
        c.var(v) = 0;
        c.mask(1, false);
    });
    b.progress(leave);
    a.set_program(t, b.build());
    a.set_live({t});
    return a.finish({P::S0}, false);
}

App delay_loop() {
    AppAssembler a("delay_loop", with_policy(PolicyKind::PreemptiveNoSlice));
    a.no_idle();
    const UnitId t = a.add_task("sleeper", 0);
    ProgramBuilder b(t);
    const Label d = b.node("sleep", [](Ctx& c) { c.delay(1); }, true);
    b.progress(d);
    a.set_program(t, b.build());
    a.set_live({t});
    return a.finish({}, false);
}

// Makes progress once, then spins without a progress label.
App self_starve() {
    AppAssembler a("self_starve", with_policy(PolicyKind::PreemptiveSlice));
    a.no_idle();
    const UnitId t = a.add_task("spinner", 0);
    ProgramBuilder b(t);
    const Label work = b.node("work", [](Ctx&) {});
    const Label spin = b.declare("spin");
    b.define(spin, [spin](Ctx& c) { c.go(spin); });
    b.progress(work);
    a.set_program(t, b.build());
    a.set_live({t});
    return a.finish({}, false);
}

App pair(const std::string& name, PolicyKind k, bool a_yields, bool b_yields) {
    AppAssembler a(name, with_policy(k));
    a.no_idle();
    const UnitId ta = a.add_task("A", 0);
    const UnitId tb = a.add_task("B", 0);
    for (const auto& [id, yields] : {std::pair{ta, a_yields}, std::pair{tb, b_yields}}) {
        ProgramBuilder b(id);
        const Label work = b.node(
            "work",
            [yields = yields](Ctx& c) {
                if (yields) c.yield();
            },
            yields);
        b.progress(work);
        a.set_program(id, b.build());
    }
    a.set_live({ta, tb});
    return a.finish({}, false);
}

struct Toy {
    ToyInfo info;
    App (*build)();
};

const std::vector<Toy>& toys() {
    static const std::vector<Toy> all{
        {{"tick_only", "idle task alone, yielding, under time slicing"},
         [] { return idle_only("tick_only", PolicyKind::PreemptiveSlice, true); }},
        {{"idle_spin", "idle task alone, never yielding"},
         [] { return idle_only("idle_spin", PolicyKind::PreemptiveSlice, false); }},
        {{"mask_forever", "single task masks both kernel lines and delays (deadlock)"}, mask_forever},
        {{"mask_toggle", "single task masking SysTick around a critical section"}, mask_toggle},
        {{"delay_loop", "single task delaying one tick per round"}, delay_loop},
        {{"self_starve", "single task that stops making progress (starves)"}, self_starve},
        {{"coop_starve", "cooperative pair, A never yields (B starves)"},
         [] { return pair("coop_starve", PolicyKind::Cooperative, false, true); }},
        {{"coop_fair", "cooperative pair, both yield"},
         [] { return pair("coop_fair", PolicyKind::Cooperative, true, true); }},
        {{"slice_pair", "time-sliced pair, neither yields"},
         [] { return pair("slice_pair", PolicyKind::PreemptiveSlice, false, false); }},
    };
    return all;
}

}  // namespace

const std::vector<ToyInfo>& toy_catalog() {
    static const std::vector<ToyInfo> infos = [] {
        std::vector<ToyInfo> v;
        for (const auto& t : toys()) v.push_back(t.info);
        return v;
    }();
    return infos;
}

App build_toy(const std::string& name) {
    for (const auto& t : toys()) {
        if (t.info.name == name) return t.build();
    }
    throw ModelError(ModelError::Kind::UnknownApp, "unknown toy: " + name);
}

}  // namespace rtosmc
