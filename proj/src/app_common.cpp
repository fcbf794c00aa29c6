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

#include <algorithm>
#include <sstream>

namespace rtosmc {

int AppOptions::param(const std::string& key, int fallback) const {
    const auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

std::optional<Violation> evaluate_checks(const GlobalState& s, const std::vector<PropertyCheck>& checks) {
    for (const auto& c : checks) {
        if (!c.predicate(s)) return Violation{c.kind, UnitId{0}, c.label, {}};
    }
    return std::nullopt;
}

AppAssembler::AppAssembler(std::string name, const AppOptions& options)
    : name_(std::move(name)), options_(options) {
    layout_.kernel.policy.kind = options.policy;
    layout_.kernel.policy.idle_yields = options.idle_yields.value_or(true);
    layout_.kernel.waiter_order = options.waiter_order;
}

UnitId AppAssembler::add_task(const std::string& name, std::uint8_t priority) {
    if (layout_.base_priority.size() >= kMaxTasks) throw ModelError(ModelError::Kind::BadConfig, "too many tasks");
    layout_.unit_names.push_back(name);
    layout_.base_priority.push_back(priority);
    programs_.emplace_back();
    return unit(layout_.base_priority.size() - 1);
}

std::size_t AppAssembler::add_queue(const std::string& name, std::uint8_t capacity) {
    IpcSpec q;
    q.kind = IpcSpec::Kind::Queue;
    q.name = name;
    q.capacity = capacity;
    layout_.ipc.push_back(q);
    return layout_.ipc.size() - 1;
}

std::size_t AppAssembler::add_lock(const std::string& name, std::uint8_t max_count, std::uint8_t initial,
                                   bool mutex) {
    IpcSpec l;
    l.kind = IpcSpec::Kind::Lock;
    l.name = name;
    l.max_count = max_count;
    l.initial = initial;
    l.mutex = mutex;
    layout_.ipc.push_back(l);
    return layout_.ipc.size() - 1;
}

std::size_t AppAssembler::add_var(const std::string& name, std::uint8_t initial) {
    layout_.var_names.push_back(name);
    var_init_.push_back(initial);
    layout_.n_vars = var_init_.size();
    return var_init_.size() - 1;
}

void AppAssembler::add_line(const std::string& name, std::uint8_t priority, std::function<Program(UnitId)> make) {
    extra_lines_.push_back({LineSpec{name, UnitId{0}, priority}, std::move(make)});
}

void AppAssembler::set_program(UnitId id, Program p) { programs_.at(raw(id)) = std::move(p); }

Program AppAssembler::idle_program() const {
    const bool yields = layout_.kernel.policy.idle_yields || cooperative();
    ProgramBuilder b(kIdleTask);
    const Label l = b.node(
        "idle",
        [yields](Ctx& c) {
            if (yields) c.yield();
        },
        yields);
    b.progress(l);
    return b.build();
}

App AppAssembler::finish(std::set<PropertyKind> properties, bool starred) {
    const std::size_t n = layout_.base_priority.size();
    constexpr std::uint8_t kKernelIrqPriority = 15;
    layout_.lines.clear();
    layout_.lines.push_back(LineSpec{"PendSV", unit(n), kKernelIrqPriority});
    layout_.lines.push_back(LineSpec{"SysTick", unit(n + 1), kKernelIrqPriority});
    layout_.unit_names.resize(n);
    layout_.unit_names.push_back("PendSV");
    layout_.unit_names.push_back("SysTick");
    for (std::size_t i = 0; i < extra_lines_.size(); ++i) {
        auto spec = extra_lines_[i].first;
        spec.id = unit(n + 2 + i);
        layout_.lines.push_back(spec);
        layout_.unit_names.push_back(spec.name);
    }
    layout_.pendsv_line = 0;
    layout_.systick_line = 1;
    layout_.validate();

    App app;
    app.name = name_;
    app.layout = layout_;
    for (std::size_t t = 0; t < n; ++t) {
        if (!programs_[t]) throw ModelError(ModelError::Kind::BadConfig, "task without program: " + layout_.unit_names[t]);
        app.programs.push_back(*programs_[t]);
    }
    app.programs.push_back(make_pendsv_program(unit(n)));
    app.programs.push_back(make_systick_program(unit(n + 1)));
    for (std::size_t i = 0; i < extra_lines_.size(); ++i) {
        app.programs.push_back(extra_lines_[i].second(unit(n + 2 + i)));
    }
    app.initial = initial_state(layout_, suspended_);
    for (std::size_t v = 0; v < var_init_.size(); ++v) app.initial.vars[v] = var_init_[v];
    app.properties = std::move(properties);
    if (live_.empty()) {
        for (std::size_t t = 1; t < n; ++t) live_.push_back(unit(t));
    }
    app.live_tasks = live_;
    app.starred = starred;
    app.invariant = invariant;

    std::ostringstream cfg;
    cfg << "app=" << name_ << ";policy=" << to_string(options_.policy)
        << ";waiters=" << (options_.waiter_order == WaiterOrder::Fifo ? "fifo" : "priority")
        << ";idle_yields=" << layout_.kernel.policy.idle_yields << ";check_task=" << options_.with_check_task
        << ";fix_delay=" << options_.fix_delay;
    for (const auto& [k, v] : options_.params) cfg << ';' << k << '=' << v;
    app.config_text = cfg.str();
    return app;
}

}  // namespace rtosmc
