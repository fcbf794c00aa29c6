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
#include "rtosmc/ipc.hpp"

#include <doctest.h>

#include <vector>

using namespace rtosmc;
using namespace rtosmc::test;

namespace {

SystemLayout with_queue(std::uint8_t cap, std::vector<std::uint8_t> prios = {0, 1, 1}) {
    auto L = make_layout(std::move(prios));
    IpcSpec q;
    q.kind = IpcSpec::Kind::Queue;
    q.name = "q";
    q.capacity = cap;
    L.ipc.push_back(q);
    return L;
}

SystemLayout with_lock(std::uint8_t max, std::uint8_t initial, bool mutex, std::vector<std::uint8_t> prios = {0, 1, 3}) {
    auto L = make_layout(std::move(prios));
    IpcSpec l;
    l.kind = IpcSpec::Kind::Lock;
    l.name = "l";
    l.max_count = max;
    l.initial = initial;
    l.mutex = mutex;
    L.ipc.push_back(l);
    return L;
}

}  // namespace

TEST_CASE("send") {
    const auto L = with_queue(1);
    GlobalState s = initial_state(L);
    const UnitId a{1};
    const UnitId b{2};

    CHECK(send(L, s, 0, a, 5, 0).outcome == Outcome::Ok);
    CHECK(s.ipc[0].count == 1);
    CHECK(s.ipc[0].buffer[0] == 5);

    SUBCASE("full with delay 0 fails at once") {
        const GlobalState before = s;
        CHECK(send(L, s, 0, a, 6, 0).outcome == Outcome::Expired);
        CHECK(s == before);
    }
    SUBCASE("full with delay 2 is served by a receive before expiry") {
        CHECK(send(L, s, 0, a, 6, 2).outcome == Outcome::Pending);
        CHECK(s.tasks[1].life == Life::Blocked);
        systick_body(L, s);
        CHECK(s.tasks[1].life == Life::Blocked);
        const auto r = receive(L, s, 0, b, 0);
        CHECK(r.outcome == Outcome::Ok);
        CHECK(r.value == 5);
        CHECK(s.tasks[1].life == Life::Ready);
        CHECK(s.tasks[1].outcome == Outcome::Ok);
        CHECK(s.ipc[0].buffer[0] == 6);
    }
    SUBCASE("blocked sender times out") {
        CHECK(send(L, s, 0, a, 6, 1).outcome == Outcome::Pending);
        systick_body(L, s);
        CHECK(s.tasks[1].life == Life::Ready);
        CHECK(s.tasks[1].outcome == Outcome::Expired);
        CHECK(s.ipc[0].nwait == 0);
    }
}

TEST_CASE("receive is FIFO") {
    const auto L = with_queue(2);
    GlobalState s = initial_state(L);
    send(L, s, 0, UnitId{1}, 5, 0);
    send(L, s, 0, UnitId{1}, 7, 0);
    const auto r = receive(L, s, 0, UnitId{2}, 0);
    CHECK(r.value == 5);
    CHECK(s.ipc[0].count == 1);
    CHECK(s.ipc[0].buffer[0] == 7);
    receive(L, s, 0, UnitId{2}, 0);
    CHECK(receive(L, s, 0, UnitId{2}, 0).outcome == Outcome::Expired);
}

TEST_CASE("receive preserves a sent sequence") {
    const auto L = with_queue(3);
    GlobalState s = initial_state(L);
    std::vector<std::uint8_t> got;
    std::uint8_t next = 0;
    for (int round = 0; round < 20; ++round) {
        for (int k = 0; k < round % 3 + 1; ++k) {
            if (send(L, s, 0, UnitId{1}, next, 0).outcome == Outcome::Ok) ++next;
        }
        const auto r = receive(L, s, 0, UnitId{2}, 0);
        if (r.outcome == Outcome::Ok) got.push_back(r.value);
    }
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == i);
}

TEST_CASE("peek") {
    const auto L = with_queue(1);
    GlobalState s = initial_state(L);
    CHECK(peek(L, s, 0, UnitId{2}, 0).outcome == Outcome::Expired);
    send(L, s, 0, UnitId{1}, 5, 0);
    const auto p = peek(L, s, 0, UnitId{2}, 0);
    CHECK(p.value == 5);
    CHECK(s.ipc[0].count == 1);
    CHECK(receive(L, s, 0, UnitId{2}, 0).value == p.value);
}

TEST_CASE("give and take on a semaphore") {
    const auto L = with_lock(1, 0, false);
    GlobalState s = initial_state(L);
    CHECK(take(L, s, 0, UnitId{2}, 0).outcome == Outcome::Expired);
    CHECK(s.tasks[2].life == Life::Running);
    CHECK(give(L, s, 0, UnitId{1}).outcome == Outcome::Ok);
    CHECK(s.ipc[0].count == 1);
    CHECK(give(L, s, 0, UnitId{1}).outcome == Outcome::Expired);
    CHECK(take(L, s, 0, UnitId{2}, 0).outcome == Outcome::Ok);
    CHECK(s.ipc[0].count == 0);
}

TEST_CASE("mutex priority inheritance") {
    const auto L = with_lock(1, 1, true);
    GlobalState s = initial_state(L);
    const UnitId low{1};
    const UnitId high{2};
    REQUIRE(take(L, s, 0, low, 0).outcome == Outcome::Ok);
    CHECK(take(L, s, 0, high, 3).outcome == Outcome::Pending);
    CHECK(s.tasks[1].effective_priority == 3);
    CHECK(give(L, s, 0, low).outcome == Outcome::Ok);
    CHECK(s.tasks[1].effective_priority == 1);
    CHECK(s.ipc[0].holder == 2);
    CHECK(s.tasks[2].outcome == Outcome::Ok);
    CHECK_THROWS_AS(give(L, s, 0, low), ModelError);
}

TEST_CASE("inheritance is undone when the waiter times out") {
    const auto L = with_lock(1, 1, true);
    GlobalState s = initial_state(L);
    take(L, s, 0, UnitId{1}, 0);
    take(L, s, 0, UnitId{2}, 1);
    systick_body(L, s);
    CHECK(s.tasks[2].outcome == Outcome::Expired);
    CHECK(s.tasks[1].effective_priority == 1);
}

TEST_CASE("waiter order") {
    auto L = with_queue(1, {0, 1, 2, 1});
    SUBCASE("priority") {
        GlobalState s = initial_state(L);
        receive(L, s, 0, UnitId{1}, kForever);
        receive(L, s, 0, UnitId{2}, kForever);
        send(L, s, 0, UnitId{3}, 9, 0);
        CHECK(s.tasks[2].outcome == Outcome::Ok);
        CHECK(s.tasks[1].life == Life::Blocked);
    }
    SUBCASE("fifo") {
        L.kernel.waiter_order = WaiterOrder::Fifo;
        GlobalState s = initial_state(L);
        receive(L, s, 0, UnitId{1}, kForever);
        receive(L, s, 0, UnitId{2}, kForever);
        send(L, s, 0, UnitId{3}, 9, 0);
        CHECK(s.tasks[1].outcome == Outcome::Ok);
        CHECK(s.tasks[2].life == Life::Blocked);
    }
}

TEST_CASE("idle may not block") {
    const auto L = with_queue(1);
    GlobalState s = initial_state(L);
    CHECK_THROWS_AS(receive(L, s, 0, kIdleTask, 1), ModelError);
}
