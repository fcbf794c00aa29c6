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

#include "rtosmc/explorer.hpp"
#include "rtosmc/hw_interrupt.hpp"
#include "rtosmc/toys.hpp"

#include <doctest.h>

using namespace rtosmc;

namespace {

App app(const std::string& name, PolicyKind p) {
    AppOptions o;
    o.policy = p;
    return build_app(name, o);
}

}  // namespace

TEST_CASE("successors of a running task") {
    const App a = build_toy("delay_loop");
    std::vector<Step> succ;
    successors(a, a.initial, succ);
    REQUIRE(succ.size() == 1);  // no command since the last tick: no trigger
    CHECK(succ[0].unit == UnitId{0});

    GlobalState s = a.initial;
    s.tick_armed = 1;
    successors(a, s, succ);
    REQUIRE(succ.size() == 2);
    CHECK(succ[0].ordinal == 0);
    CHECK(succ[1].trigger);
    CHECK(succ[1].unit == a.layout.systick());

    successors(a, s, succ, true);
    CHECK(succ[0].trigger);
}

TEST_CASE("pending SysTick preempts the task") {
    const App a = build_toy("delay_loop");
    GlobalState s = a.initial;
    set_pending(s, a.layout.systick_line, true);
    std::vector<Step> succ;
    successors(a, s, succ);
    REQUIRE(succ.size() == 1);
    CHECK(succ[0].ordinal == kEntryOrdinal);
    CHECK(succ[0].next.ep == a.layout.systick());
}

TEST_CASE("mask-forever toy deadlocks") {
    const App a = build_toy("mask_forever");
    const Verdict v = check_safety(a);
    CHECK(v.kind == VerdictKind::Deadlock);
    REQUIRE(v.trace);
    const auto states = replay(a, *v.trace);
    std::vector<Step> succ;
    successors(a, states.back(), succ);
    CHECK(succ.empty());
}

TEST_CASE("safety verdicts") {
    SUBCASE("Dynamic / timeslice fails S0") {
        const Verdict v = check_safety(app("Dynamic", PolicyKind::PreemptiveSlice));
        CHECK(v.kind == VerdictKind::SafetyFail);
        REQUIRE(v.violation);
        CHECK(v.violation->kind == PropertyKind::S0);
    }
    SUBCASE("PollQ / cooperative passes") {
        CHECK(check_safety(app("PollQ", PolicyKind::Cooperative)).kind == VerdictKind::SafetyPass);
    }
}

TEST_CASE("liveness verdicts") {
    SUBCASE("Semtest / cooperative starves") {
        const Verdict v = check_liveness(app("Semtest", PolicyKind::Cooperative));
        CHECK(v.kind == VerdictKind::LivenessFail);
        REQUIRE(v.trace);
        CHECK(v.trace->loop_start);
    }
    SUBCASE("PollQ / timeslice passes") {
        CHECK(check_liveness(app("PollQ", PolicyKind::PreemptiveSlice)).kind == VerdictKind::LivenessPass);
    }
    SUBCASE("Countsem / timeslice starves") {
        CHECK(check_liveness(app("Countsem", PolicyKind::PreemptiveSlice)).kind == VerdictKind::LivenessFail);
    }
}

TEST_CASE("replay") {
    const App a = app("Dynamic", PolicyKind::PreemptiveSlice);
    const Verdict v = check_safety(a);
    REQUIRE(v.trace);

    SUBCASE("failing trace reaches the violation") {
        const auto states = replay(a, *v.trace);
        CHECK(states.size() == v.trace->steps.size() + 1);
        const auto& last = v.trace->steps.back();
        const Step st = apply_step(a, states[states.size() - 2], last.unit, last.ordinal);
        REQUIRE(st.violation);
        CHECK(st.violation->kind == PropertyKind::S0);
    }
    SUBCASE("another policy diverges") {
        CHECK_THROWS_AS(replay(app("Dynamic", PolicyKind::Cooperative), *v.trace), ModelError);
    }
    SUBCASE("a corrupted digest is detected") {
        Trace t = *v.trace;
        t.steps[t.steps.size() / 2].digest ^= 1;
        CHECK_THROWS_AS(replay(a, t), ModelError);
    }
    SUBCASE("lasso closes at loop_start") {
        const App c = app("Countsem", PolicyKind::PreemptiveSlice);
        const Verdict l = check_liveness(c);
        REQUIRE(l.trace);
        REQUIRE(l.trace->loop_start);
        const auto states = replay(c, *l.trace);
        CHECK(states.back() == states[*l.trace->loop_start]);
        Trace t = *l.trace;
        t.loop_start = *t.loop_start + 1;
        CHECK_THROWS_AS(replay(c, t), ModelError);
    }
}

TEST_CASE("limits") {
    const App a = app("Semtest", PolicyKind::PreemptiveSlice);
    ExploreOptions o;
    o.limits.max_states = 100;
    const Verdict v = check_safety(a, o);
    CHECK(v.kind == VerdictKind::LimitExceeded);
    CHECK(v.limit == "states");
    CHECK(check_liveness(a, o).kind == VerdictKind::LimitExceeded);
    o.limits = {};
    o.limits.max_depth = 5;
    CHECK(check_safety(a, o).limit == "depth");
    o.limits.max_depth = 0;
    CHECK_THROWS_AS(check_safety(a, o), ModelError);
}

TEST_CASE("deadlock-only search ignores assertions") {
    const App a = app("Dynamic", PolicyKind::PreemptiveSlice);
    ExploreOptions o;
    o.assertions = false;
    CHECK(check_safety(a, o).kind == VerdictKind::SafetyPass);
}

TEST_CASE("serial, parallel, reversed and digest-store searches agree") {
    for (const auto* name : {"PollQ", "QPeek", "Recmutex", "Semtest"}) {
        for (auto p : {PolicyKind::Cooperative, PolicyKind::PreemptiveSlice}) {
            const App a = app(name, p);
            const Verdict s = check_safety(a);
            const Verdict l = check_liveness(a);
            for (int variant = 0; variant < 3; ++variant) {
                ExploreOptions o;
                if (variant == 0) o.workers = 4;
                if (variant == 1) o.reverse_children = true;
                if (variant == 2) o.store = StoreMode::Digest;
                CAPTURE(name);
                CAPTURE(variant);
                const Verdict s2 = check_safety(a, o);
                const Verdict l2 = check_liveness(a, o);
                CHECK(s2.kind == s.kind);
                CHECK(l2.kind == l.kind);
                CHECK(l2.starving == l.starving);
                if (s.kind == VerdictKind::SafetyPass) CHECK(s2.stats.states == s.stats.states);
            }
        }
    }
}

TEST_CASE("reachable states match the safety search") {
    const App a = app("QPeek", PolicyKind::PreemptiveNoSlice);
    CHECK(reachable_states(a).size() == check_safety(a).stats.states);
}
