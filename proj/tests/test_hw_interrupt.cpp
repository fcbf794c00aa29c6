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

TEST_CASE("prioritizing: lines against tasks and handlers") {
    const auto L = make_layout({0, 1, 2});  // PendSV = 3, SysTick = 4
    const GlobalState s = initial_state(L);
    const auto tick = line_view(L, s, kSysTick);
    CHECK(prioritizing(L, tick, UnitId{2}));
    CHECK_FALSE(prioritizing(L, tick, L.pendsv()));
    CHECK_FALSE(prioritizing(L, tick, L.systick()));
    CHECK_FALSE(prioritizing(L, line_view(L, s, kPendSV), L.pendsv()));
}

TEST_CASE("irq_step guard") {
    const auto L = make_layout({0, 1});
    GlobalState s = initial_state(L);
    REQUIRE(s.ep == UnitId{1});

    SUBCASE("pending and unmasked enters the handler") {
        set_pending(s, kSysTick, true);
        const auto n = irq_step(L, s, kSysTick);
        REQUIRE(n);
        CHECK(n->ep == L.systick());
        CHECK(n->depth == 1);
        CHECK(n->stack[0] == UnitId{1});
        CHECK_FALSE(is_pending(*n, kSysTick));
    }
    SUBCASE("not pending") { CHECK_FALSE(irq_step(L, s, kSysTick)); }
    SUBCASE("masked until unmasked") {
        set_pending(s, kSysTick, true);
        set_masked(s, kSysTick, true);
        CHECK_FALSE(irq_step(L, s, kSysTick));
        set_masked(s, kSysTick, false);
        CHECK(irq_step(L, s, kSysTick));
    }
}

TEST_CASE("exception_entry pushes EP and clears pending") {
    const auto L = make_layout({0, 1, 2, 3}, PolicyKind::PreemptiveSlice, {14});  // PendSV 4, SysTick 5, IRQ0 6
    GlobalState s = initial_state(L);

    SUBCASE("EP=3, stack=[0]") {
        s.ep = UnitId{3};
        s.stack[0] = UnitId{0};
        s.depth = 1;
        set_pending(s, kPendSV, true);
        const auto n = exception_entry(L, s, L.pendsv());
        CHECK(n.ep == L.pendsv());
        CHECK(n.depth == 2);
        CHECK(n.stack[0] == UnitId{0});
        CHECK(n.stack[1] == UnitId{3});
        CHECK_FALSE(is_pending(n, kPendSV));
    }
    SUBCASE("idle with empty stack") {
        s.ep = kIdleTask;
        const auto n = exception_entry(L, s, L.systick());
        CHECK(n.ep == L.systick());
        CHECK(n.depth == 1);
        CHECK(n.stack[0] == kIdleTask);
    }
    SUBCASE("nested entry of a more urgent line") {
        s = exception_entry(L, s, L.systick());
        set_pending(s, 2, true);
        const auto w = arbitrate(L, s, s.ep);
        REQUIRE(w);
        CHECK(*w == 2);
        const auto n = exception_entry(L, s, L.lines[2].id);
        CHECK(n.depth == 2);
        CHECK(n.stack[1] == L.systick());
    }
    SUBCASE("overflow") {
        s.depth = kStackCapacity;
        CHECK_THROWS_AS(exception_entry(L, s, L.systick()), ModelError);
    }
}

TEST_CASE("exception_return: plain return, tail chain, masked") {
    const auto L = make_layout({0, 1, 2});
    GlobalState s = initial_state(L);
    s.ep = L.systick();
    s.stack[0] = UnitId{0};

    SUBCASE("tail chain keeps the stack") {
        s.stack[1] = UnitId{2};
        s.depth = 2;
        set_pending(s, kPendSV, true);
        const auto n = exception_return(L, s, L.systick());
        CHECK(n.ep == L.pendsv());
        CHECK(n.depth == 2);
        CHECK(n.stack[1] == UnitId{2});
        CHECK_FALSE(is_pending(n, kPendSV));
    }
    SUBCASE("plain return pops") {
        s.depth = 1;
        s.tasks[0].life = Life::Ready;
        s.tasks[2].life = Life::Ready;
        const auto n = exception_return(L, s, L.systick());
        CHECK(n.ep == UnitId{0});
        CHECK(n.depth == 0);
        CHECK(n.tasks[0].life == Life::Running);
    }
    SUBCASE("masked pending line does not chain") {
        s.stack[1] = UnitId{2};
        s.depth = 2;
        set_pending(s, kPendSV, true);
        set_masked(s, kPendSV, true);
        const auto n = exception_return(L, s, L.systick());
        CHECK(n.ep == UnitId{2});
        CHECK(n.depth == 1);
        CHECK(is_pending(n, kPendSV));
    }
    SUBCASE("underflow") {
        s.depth = 0;
        CHECK_THROWS_AS(exception_return(L, s, L.systick()), ModelError);
    }
}

TEST_CASE("arbitration ties go to the lowest id") {
    const auto L = make_layout({0, 1});
    GlobalState s = initial_state(L);
    set_pending(s, kPendSV, true);
    set_pending(s, kSysTick, true);
    const auto w = arbitrate(L, s, s.ep);
    REQUIRE(w);
    CHECK(*w == kPendSV);
}
