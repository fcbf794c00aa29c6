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

#include "rtosmc/oracle.hpp"

#include <deque>
#include <map>

namespace rtosmc {

namespace {

struct Edge {
    std::size_t to;
    int progress;  // task id or -1
    bool trigger;
};

int execution_priority(const SystemLayout& L, UnitId ep) {
    return L.is_task(ep) ? 1 << 16 : L.lines[L.line_of(ep)].priority;
}

bool bit(std::uint8_t mask, std::size_t i) { return (mask >> i) & 1U; }

/// Successors by direct reading of the rules: the most urgent enabled entry
/// preempts everything, otherwise the EP unit runs one command; the tick
/// trigger is always offered when armed and SysTick is idle.
std::vector<std::pair<GlobalState, Edge>> step_all(const App& app, const GlobalState& s,
                                                   std::optional<Violation>& violation) {
    const auto& L = app.layout;
    std::vector<std::pair<GlobalState, Edge>> out;

    int best = -1;
    for (std::size_t l = 0; l < L.lines.size(); ++l) {
        if (!bit(s.pending, l) || bit(s.masked, l)) continue;
        if (L.lines[l].priority >= execution_priority(L, s.ep)) continue;
        if (best < 0 || L.lines[l].priority < L.lines[static_cast<std::size_t>(best)].priority) best = static_cast<int>(l);
    }
    if (best >= 0) {
        GlobalState n = s;
        const auto& line = L.lines[static_cast<std::size_t>(best)];
        if (n.depth >= kStackCapacity) throw ModelError(ModelError::Kind::StackOverflow, "oracle: stack overflow");
        n.stack[n.depth] = n.ep;
        n.depth = static_cast<std::uint8_t>(n.depth + 1);
        n.pending = static_cast<std::uint8_t>(n.pending & ~(1U << best));
        n.ep = line.id;
        n.pc[raw(line.id)] = 0;
        out.push_back({n, Edge{0, -1, false}});
    } else if (!L.is_task(s.ep) || s.tasks[raw(s.ep)].life == Life::Running) {
        const Node& node = app.program(s.ep).nodes.at(s.pc[raw(s.ep)]);
        GlobalState n = s;
        std::optional<Violation> v;
        Ctx ctx(L, n, s.ep, v, node.name);
        node.run(ctx);
        const auto size = app.program(s.ep).nodes.size();
        if (ctx.next()) {
            n.pc[raw(s.ep)] = *ctx.next();
        } else if (n.pc[raw(s.ep)] == s.pc[raw(s.ep)]) {
            n.pc[raw(s.ep)] = static_cast<std::uint8_t>((s.pc[raw(s.ep)] + 1) % size);
        }
        int progress = -1;
        if (L.is_task(s.ep)) {
            n.tick_armed = 1;
            if (node.progress) progress = raw(s.ep);
        }
        if (v && !violation) violation = v;
        out.push_back({n, Edge{0, progress, false}});
    }
    if (s.tick_armed && !bit(s.pending, L.systick_line)) {
        GlobalState n = s;
        n.pending = static_cast<std::uint8_t>(n.pending | (1U << L.systick_line));
        n.tick_armed = 0;
        out.push_back({n, Edge{0, -1, true}});
    }
    return out;
}

}  // namespace

OracleResult brute_force_oracle(const App& app, std::size_t max_states) {
    if (app.layout.n_units() > kOracleMaxUnits) {
        throw ModelError(ModelError::Kind::BadConfig, "oracle handles at most 4 units");
    }
    const StateCodec codec(app.layout);
    std::map<std::vector<std::uint8_t>, std::size_t> index;
    std::vector<GlobalState> states;
    std::vector<std::vector<Edge>> adj;
    OracleResult r;

    auto add = [&](const GlobalState& s) {
        auto enc = codec.encode(s);
        auto [it, fresh] = index.emplace(std::move(enc), states.size());
        if (fresh) {
            states.push_back(s);
            adj.emplace_back();
            if (states.size() > max_states) throw ModelError(ModelError::Kind::BadConfig, "oracle: too many states");
        }
        return it->second;
    };

    add(app.initial);
    for (std::size_t k = 0; k < states.size(); ++k) {
        const GlobalState s = states[k];
        auto succ = step_all(app, s, r.violation);
        if (succ.empty()) r.deadlock = true;
        for (auto& [n, e] : succ) {
            e.to = add(n);
            adj[k].push_back(e);
            ++r.transitions;
        }
    }
    for (const auto& [enc, id] : index) r.states.insert(enc);

    // Task t starves iff some trigger edge u->v lies on a cycle that avoids
    // t's progress edges: v reaches u without taking such an edge.
    for (const UnitId t : app.live_tasks) {
        const int tid = raw(t);
        bool found = false;
        for (std::size_t u = 0; u < states.size() && !found; ++u) {
            for (const Edge& e : adj[u]) {
                if (!e.trigger) continue;
                std::vector<bool> seen(states.size(), false);
                std::deque<std::size_t> q{e.to};
                seen[e.to] = true;
                while (!q.empty() && !seen[u]) {
                    const auto x = q.front();
                    q.pop_front();
                    for (const Edge& f : adj[x]) {
                        if (f.progress == tid || seen[f.to]) continue;
                        seen[f.to] = true;
                        q.push_back(f.to);
                    }
                }
                if (seen[u]) {
                    found = true;
                    break;
                }
            }
        }
        if (found) r.starving.push_back(app.layout.name(t));
    }
    return r;
}

}  // namespace rtosmc
