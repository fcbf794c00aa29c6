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

#include "fixtures.hpp"

#include <doctest.h>

using namespace rtosmc;
using namespace rtosmc::test;

namespace {

/// State with every task Ready and `runner` Running as EP.
GlobalState running(const SystemLayout& L, UnitId runner) {
    GlobalState s = initial_state(L);
    for (std::size_t t = 0; t < L.n_tasks(); ++t) s.tasks[t].life = Life::Ready;
    s.tasks[raw(runner)].life = Life::Running;
    s.ep = runner;
    return s;
}

}  // namespace

TEST_CASE("next_task_id: strict priority") {
    const auto L = make_layout({0, 1, 2});
    const GlobalState s = initial_state(L);
    CHECK(next_task_id(L, s) == UnitId{2});
}

TEST_CASE("next_task_id: round robin within a level") {
    const auto L = make_layout({0, 1, 1});
    GlobalState s = initial_state(L);
    s.cursor[1] = 1;
    CHECK(next_task_id(L, s) == UnitId{2});
    s.cursor[1] = 2;
    CHECK(next_task_id(L, s) == UnitId{1});
}

TEST_CASE("next_task_id: idle when everything else is delayed") {
    const auto L = make_layout({0, 1, 2});
    GlobalState s = initial_state(L);
    s.tasks[1].life = Life::Delayed;
    s.tasks[2].life = Life::Delayed;
    CHECK(next_task_id(L, s) == kIdleTask);
}

TEST_CASE("pendsv: SET_TOP replaces the stack top") {
    const auto L = make_layout({0, 1, 1});
    GlobalState s = running(L, UnitId{1});
    s.cursor[1] = 1;
    s = exception_entry(L, s, L.pendsv());
    pendsv_set_top(L, s);
    CHECK(s.stack[0] == UnitId{2});
    CHECK(s.tasks[1].life == Life::Ready);
    apply_exception_return(L, s, L.pendsv());
    CHECK(s.ep == UnitId{2});
    CHECK(s.tasks[2].life == Life::Running);

    SUBCASE("self switch") {
        const auto L1 = make_layout({0, 1});
        GlobalState t = running(L1, UnitId{1});
        t = exception_entry(L1, t, L1.pendsv());
        pendsv_set_top(L1, t);
        CHECK(t.stack[0] == UnitId{1});
    }
}

TEST_CASE("victim: SysTick pending between SET_TOP and ExpReturn") {
    const auto L = make_layout({0, 1, 1});
    GlobalState s = running(L, UnitId{1});
    s.cursor[1] = 1;
    s = exception_entry(L, s, L.pendsv());
    pendsv_set_top(L, s);
    REQUIRE(s.stack[0] == UnitId{2});
    trigger_systick(L, s);
    apply_exception_return(L, s, L.pendsv());
    CHECK(s.ep == L.systick());  // tail chained, task 2 has not run
    systick_body(L, s);
    CHECK(is_pending(s, kPendSV));
    apply_exception_return(L, s, L.systick());
    CHECK(s.ep == L.pendsv());
    pendsv_set_top(L, s);
    CHECK(s.stack[0] == UnitId{1});  // task 2 lost its slice
}

TEST_CASE("systick_body") {
    SUBCASE("cooperative wake does not pend PendSV") {
        const auto L = make_layout({0, 1}, PolicyKind::Cooperative);
        GlobalState s = running(L, kIdleTask);
        s.tasks[1].life = Life::Delayed;
        s.tasks[1].counter = 1;
        systick_body(L, s);
        CHECK(s.tasks[1].life == Life::Ready);
        CHECK_FALSE(is_pending(s, kPendSV));
    }
    SUBCASE("time slicing always pends PendSV") {
        const auto L = make_layout({0, 1});
        GlobalState s = running(L, UnitId{1});
        s = exception_entry(L, s, L.systick());
        systick_body(L, s);
        CHECK(is_pending(s, kPendSV));
        apply_exception_return(L, s, L.systick());
        CHECK(s.ep == L.pendsv());
    }
    SUBCASE("preemptive without slicing pends only on a preempting wake") {
        const auto L = make_layout({0, 1, 2}, PolicyKind::PreemptiveNoSlice);
        GlobalState s = running(L, UnitId{2});
        systick_body(L, s);
        CHECK_FALSE(is_pending(s, kPendSV));
        s.tasks[1].life = Life::Delayed;
        s.tasks[1].counter = 1;
        systick_body(L, s);
        CHECK(s.tasks[1].life == Life::Ready);
        CHECK_FALSE(is_pending(s, kPendSV));
    }
}

TEST_CASE("trigger_systick latches once") {
    const auto L = make_layout({0, 1});
    GlobalState s = initial_state(L);
    CHECK_FALSE(systick_trigger_enabled(L, s));  // no task command since the last trigger
    s.tick_armed = 1;
    REQUIRE(systick_trigger_enabled(L, s));
    trigger_systick(L, s);
    CHECK(is_pending(s, kSysTick));
    CHECK_FALSE(systick_trigger_enabled(L, s));
    s.tick_armed = 1;
    CHECK_FALSE(systick_trigger_enabled(L, s));  // still pending
}

TEST_CASE("yield pends PendSV and is idempotent") {
    const auto L = make_layout({0, 1});
    GlobalState s = running(L, UnitId{1});
    yield(L, s, UnitId{1});
    CHECK(is_pending(s, kPendSV));
    CHECK(s.ep == UnitId{1});
    const GlobalState once = s;
    yield(L, s, UnitId{1});
    CHECK(s == once);
}

TEST_CASE("delay counts down through SysTick") {
    const auto L = make_layout({0, 1});
    GlobalState s = running(L, UnitId{1});
    delay_task(L, s, UnitId{1}, 3);
    CHECK(s.tasks[1].life == Life::Delayed);
    CHECK(s.tasks[1].counter == 3);
    systick_body(L, s);
    systick_body(L, s);
    CHECK(s.tasks[1].life == Life::Delayed);
    systick_body(L, s);
    CHECK(s.tasks[1].life == Life::Ready);
}

TEST_CASE("delay above max_delay and idle delay are rejected") {
    const auto L = make_layout({0, 1});
    GlobalState s = running(L, UnitId{1});
    CHECK_THROWS_AS(delay_task(L, s, UnitId{1}, 8), ModelError);
    CHECK_THROWS_AS(delay_task(L, s, kIdleTask, 1), ModelError);
}

TEST_CASE("resume") {
    SUBCASE("higher priority target preempts under PreemptiveNoSlice") {
        const auto L = make_layout({0, 1, 2}, PolicyKind::PreemptiveNoSlice);
        GlobalState s = running(L, UnitId{1});
        s.tasks[2].life = Life::Suspended;
        resume_task(L, s, UnitId{1}, UnitId{2});
        CHECK(s.tasks[2].life == Life::Ready);
        CHECK(is_pending(s, kPendSV));
    }
    SUBCASE("cooperative resume does not pend") {
        const auto L = make_layout({0, 1, 2}, PolicyKind::Cooperative);
        GlobalState s = running(L, UnitId{1});
        s.tasks[2].life = Life::Suspended;
        resume_task(L, s, UnitId{1}, UnitId{2});
        CHECK(s.tasks[2].life == Life::Ready);
        CHECK_FALSE(is_pending(s, kPendSV));
    }
}

TEST_CASE("suspend self pends a switch") {
    const auto L = make_layout({0, 1});
    GlobalState s = running(L, UnitId{1});
    suspend_task(L, s, UnitId{1}, UnitId{1});
    CHECK(s.tasks[1].life == Life::Suspended);
    CHECK(is_pending(s, kPendSV));
    CHECK_THROWS_AS(suspend_task(L, s, UnitId{1}, kIdleTask), ModelError);
}

TEST_CASE("initial state") {
    const auto L = make_layout({0, 1, 2});
    const GlobalState s = initial_state(L);
    CHECK(s.ep == UnitId{2});
    CHECK(s.tasks[2].life == Life::Running);
    CHECK(s.tasks[1].life == Life::Ready);
    CHECK(s.depth == 0);
    CHECK(s.tick_armed == 0);
    const GlobalState t = initial_state(L, {UnitId{2}});
    CHECK(t.ep == UnitId{1});
    CHECK(t.tasks[2].life == Life::Suspended);
    CHECK_THROWS_AS(initial_state(L, {kIdleTask}), ModelError);
}
