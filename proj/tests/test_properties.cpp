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
#include "rtosmc/invariants.hpp"
#include "rtosmc/toys.hpp"

#include <doctest.h>

#include <deque>
#include <map>
#include <random>
#include <set>

using namespace rtosmc;

namespace {

const std::vector<PolicyKind> kPolicies{PolicyKind::Cooperative, PolicyKind::PreemptiveNoSlice,
                                        PolicyKind::PreemptiveSlice};

App app(const std::string& name, PolicyKind p) {
    AppOptions o;
    o.policy = p;
    return build_app(name, o);
}

bool large(const std::string& name, PolicyKind p) { return name == "BlockQ" && p == PolicyKind::PreemptiveSlice; }

/// Every reachable state, breadth first.
std::vector<GlobalState> reachable(const App& a) {
    const StateCodec codec(a.layout);
    std::vector<GlobalState> out;
    std::set<std::vector<std::uint8_t>> seen{codec.encode(a.initial)};
    std::deque<GlobalState> q{a.initial};
    std::vector<Step> succ;
    while (!q.empty()) {
        GlobalState s = std::move(q.front());
        q.pop_front();
        successors(a, s, succ);
        for (auto& st : succ) {
            if (seen.insert(codec.encode(st.next)).second) q.push_back(st.next);
        }
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace

TEST_CASE("kernel, interrupt and app invariants hold on every reachable state") {
    for (const auto& name : app_names()) {
        for (const auto p : kPolicies) {
            if (large(name, p)) continue;
            CAPTURE(name);
            CAPTURE(to_string(p));
            ExploreOptions o;
            o.check_invariants = true;
            CHECK(check_safety(app(name, p), o).invariant_failure == "");
            CHECK(check_liveness(app(name, p), o).invariant_failure == "");
        }
    }
    for (const auto& t : toy_catalog()) {
        ExploreOptions o;
        o.check_invariants = true;
        CHECK(check_safety(build_toy(t.name), o).invariant_failure == "");
    }
}

TEST_CASE("stack depth stays within the priority levels plus one") {
    for (const auto& name : app_names()) {
        for (const auto p : kPolicies) {
            if (large(name, p)) continue;
            const App a = app(name, p);
            std::set<std::uint8_t> levels;
            for (const auto& l : a.layout.lines) levels.insert(l.priority);
            std::uint8_t deepest = 0;
            for (const auto& s : reachable(a)) deepest = std::max(deepest, s.depth);
            CAPTURE(name);
            CHECK(deepest <= levels.size() + 1);
        }
    }
}

TEST_CASE("starred apps yield on every loop under cooperative scheduling") {
    for (const auto& name : app_names()) {
        const App a = app(name, PolicyKind::Cooperative);
        if (!a.starred) continue;
        // Command graph of each task as actually executed, without the nodes
        // that may give up the processor; it must be acyclic.
        std::vector<std::map<std::uint8_t, std::set<std::uint8_t>>> graph(a.layout.n_tasks());
        std::vector<Step> succ;
        for (const auto& s : reachable(a)) {
            successors(a, s, succ);
            for (const auto& st : succ) {
                if (!a.layout.is_task(st.unit) || st.ordinal >= kEntryOrdinal) continue;
                if (a.program(st.unit).nodes[st.ordinal].yields) continue;
                const auto to = st.next.pc[raw(st.unit)];
                if (!a.program(st.unit).nodes[to].yields) graph[raw(st.unit)][st.ordinal].insert(to);
            }
        }
        for (std::size_t t = 1; t < graph.size(); ++t) {
            std::map<std::uint8_t, int> color;
            bool cycle = false;
            std::function<void(std::uint8_t)> dfs = [&](std::uint8_t u) {
                color[u] = 1;
                for (const auto v : graph[t][u]) {
                    if (color[v] == 1) cycle = true;
                    if (color[v] == 0) dfs(v);
                }
                color[u] = 2;
            };
            for (const auto& [u, _] : graph[t]) {
                if (color[u] == 0) dfs(u);
            }
            CAPTURE(name);
            CAPTURE(a.layout.unit_names[t]);
            CHECK_FALSE(cycle);
        }
    }
}

TEST_CASE("fixed-period tick schedules are explored behaviours") {
    // Drive each app with a deterministic tick every k task commands; the
    // trigger must be enabled whenever the schedule asks for it.
    std::mt19937 rng(7);
    for (const auto* name : {"PollQ", "Semtest", "Countsem", "Recmutex"}) {
        for (const auto p : kPolicies) {
            for (int k = 1; k <= 3; ++k) {
                const App a = app(name, p);
                GlobalState s = a.initial;
                std::vector<Step> succ;
                int since = 0;
                bool ok = true;
                for (int i = 0; i < 3000 && ok; ++i) {
                    successors(a, s, succ);
                    REQUIRE_FALSE(succ.empty());
                    const bool want = since >= k && !is_pending(s, a.layout.systick_line);
                    const Step* pick = nullptr;
                    for (const auto& st : succ) {
                        if (st.trigger == want) pick = &st;
                    }
                    if (want && !pick) ok = false;
                    if (!pick) pick = &succ[rng() % succ.size()];
                    if (pick->trigger) since = 0;
                    if (a.layout.is_task(pick->unit) && pick->ordinal < kEntryOrdinal) ++since;
                    s = pick->next;
                }
                CAPTURE(name);
                CAPTURE(k);
                CHECK(ok);
            }
        }
    }
}

TEST_CASE("digests do not merge distinct states") {
    for (const auto& name : app_names()) {
        const App a = app(name, PolicyKind::Cooperative);
        const StateCodec codec(a.layout);
        const auto states = reachable_states(a);
        std::set<std::uint64_t> digests;
        for (const auto& e : states) digests.insert(digest_bytes(e));
        CAPTURE(name);
        CHECK(digests.size() == states.size());
    }
}

TEST_CASE("state encoding round-trips") {
    const App a = app("GenQTest", PolicyKind::PreemptiveSlice);
    const StateCodec codec(a.layout);
    for (const auto& s : reachable(a)) {
        const auto e = codec.encode(s);
        REQUIRE(codec.decode(e) == s);
    }
}

TEST_CASE("invariant checker catches broken states") {
    const App a = app("PollQ", PolicyKind::PreemptiveSlice);
    CHECK_FALSE(check_state_invariants(a, a.initial));

    GlobalState s = a.initial;
    for (auto& t : s.tasks) t.life = Life::Running;
    CHECK(check_state_invariants(a, s));

    s = a.initial;
    s.ipc[0].count = 3;
    CHECK(check_state_invariants(a, s));

    s = a.initial;
    s.tasks[0].life = Life::Delayed;
    s.tasks[0].counter = 1;
    CHECK(check_state_invariants(a, s));

    s = a.initial;
    s.tasks[1].life = Life::Blocked;
    s.tasks[1].counter = kForever;
    CHECK(check_state_invariants(a, s));  // blocked but on no waiting list
}

TEST_CASE("counters move only in the SysTick body") {
    const App a = app("PollQ", PolicyKind::PreemptiveSlice);
    GlobalState pre = a.initial;
    pre.tasks[1].life = Life::Delayed;
    pre.tasks[1].counter = 2;
    Step st;
    st.unit = UnitId{2};
    st.ordinal = 0;
    st.next = pre;
    st.next.tasks[1].counter = 1;
    CHECK(check_transition_invariants(a, pre, st));
    st.unit = a.layout.systick();
    CHECK_FALSE(check_transition_invariants(a, pre, st));
}
