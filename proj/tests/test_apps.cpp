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

#include "rtosmc/apps.hpp"

#include <doctest.h>

#include <algorithm>

using namespace rtosmc;

namespace {

std::size_t tasks_at(const App& a, std::uint8_t prio) {
    return static_cast<std::size_t>(std::count(a.layout.base_priority.begin(), a.layout.base_priority.end(), prio));
}

bool has_node(const App& a, const std::string& task, const std::string& label) {
    for (std::size_t t = 0; t < a.layout.n_tasks(); ++t) {
        if (a.layout.unit_names[t] != task) continue;
        for (const auto& n : a.programs[t].nodes) {
            if (n.name == label) return true;
        }
    }
    return false;
}

}  // namespace

TEST_CASE("every app builds under every policy") {
    for (const auto& name : app_names()) {
        for (auto p : {PolicyKind::Cooperative, PolicyKind::PreemptiveNoSlice, PolicyKind::PreemptiveSlice}) {
            AppOptions o;
            o.policy = p;
            const App a = build_app(name, o);
            CHECK(a.name == name);
            CHECK(a.programs.size() == a.layout.n_units());
            CHECK(a.layout.unit_names[0] == "idle");
            CHECK(a.properties == table_properties(name));
            CHECK_FALSE(a.live_tasks.empty());
            for (const auto t : a.live_tasks) {
                const auto& nodes = a.program(t).nodes;
                CHECK(std::any_of(nodes.begin(), nodes.end(), [](const Node& n) { return n.progress; }));
            }
        }
    }
}

TEST_CASE("app lookup") {
    AppOptions o;
    CHECK(build_app("blockq", o).name == "BlockQ");
    CHECK_THROWS_AS(build_app("Nope", o), ModelError);
    o.params["no_such_param"] = 1;
    CHECK_THROWS_AS(build_app("PollQ", o), ModelError);
}

TEST_CASE("Semtest has two pairs: polling Take(0) and blocking Take(d)") {
    const App a = build_app("Semtest", {});
    CHECK(tasks_at(a, 0) == 3);  // idle and the polling pair
    CHECK(tasks_at(a, 1) == 2);
    CHECK(a.layout.ipc.size() == 2);
    CHECK(has_node(a, "poll1", "yield"));
    CHECK(has_node(a, "block1", "take~wake"));
    CHECK_FALSE(has_node(a, "poll1", "take~wake"));
}

TEST_CASE("BlockQ has three producer/consumer pairs") {
    const App a = build_app("BlockQ", {});
    CHECK(a.layout.ipc.size() == 3);
    for (const auto* t : {"producer1", "consumer1", "producer2", "consumer2", "producer3", "consumer3"}) {
        CHECK(std::find(a.layout.unit_names.begin(), a.layout.unit_names.end(), t) != a.layout.unit_names.end());
    }
}

TEST_CASE("Recmutex has low, medium and high sharing one mutex") {
    const App a = build_app("Recmutex", {});
    CHECK(a.layout.ipc.size() == 1);
    CHECK(a.layout.ipc[0].mutex);
    CHECK(tasks_at(a, 1) == 1);
    CHECK(tasks_at(a, 2) == 1);
}

TEST_CASE("options that add or change tasks") {
    AppOptions o;
    o.policy = PolicyKind::PreemptiveNoSlice;
    const auto plain = build_app("Dynamic", o).layout.n_tasks();
    o.with_check_task = true;
    CHECK(build_app("Dynamic", o).layout.n_tasks() == plain + 1);
    CHECK(build_app("Dynamic", o).config_text != build_app("Dynamic", AppOptions{}).config_text);
}

TEST_CASE("evaluate_checks") {
    GlobalState s;
    s.vars[0] = 0;
    s.vars[1] = 1;
    s.vars[2] = 3;
    const std::vector<PropertyCheck> order{
        {PropertyKind::S3, "recv", [](const GlobalState& g) {
             for (int i = 1; i < 3; ++i) {
                 if (g.vars[i] != g.vars[i - 1] + 1) return false;
             }
             return true;
         }}};
    const auto v = evaluate_checks(s, order);
    REQUIRE(v);
    CHECK(v->kind == PropertyKind::S3);
    CHECK(v->label == "recv");

    s.tasks[1].effective_priority = 1;
    s.tasks[2].effective_priority = 3;
    const std::vector<PropertyCheck> inherit{
        {PropertyKind::S6, "inherited",
         [](const GlobalState& g) { return g.tasks[1].effective_priority >= g.tasks[2].effective_priority; }}};
    CHECK(evaluate_checks(s, inherit)->kind == PropertyKind::S6);

    s.vars[2] = 2;
    CHECK_FALSE(evaluate_checks(s, order));
}

TEST_CASE("property names") {
    for (auto k : {PropertyKind::S0, PropertyKind::S3, PropertyKind::S6}) CHECK(property_from_string(to_string(k)) == k);
    CHECK_FALSE(property_from_string("S9"));
}
