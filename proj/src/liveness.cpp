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
#include "rtosmc/invariants.hpp"
#include "search_common.hpp"
#include "store.hpp"

#include <algorithm>
#include <deque>
#include <exception>
#include <tuple>

namespace rtosmc {

using detail::PathStep;

namespace {

struct Edge {
    std::uint32_t dst = 0;
    std::uint8_t unit = 0;
    std::uint8_t ordinal = 0;
    std::uint8_t progress = kNone;
    std::uint8_t trigger = 0;
};

/// Reachable transition graph in CSR form, with a breadth-first spanning tree.
struct Graph {
    std::vector<std::uint64_t> off;
    std::vector<Edge> edges;
    std::vector<std::uint32_t> parent_edge;  // edge index into `edges`, root = UINT32_MAX
    std::vector<std::uint32_t> parent;
    std::size_t n() const { return off.empty() ? 0 : off.size() - 1; }
};

struct BuildResult {
    Graph g;
    Verdict v;  // kind stays LivenessPass unless a limit is hit
};

constexpr std::uint32_t kRoot = 0xFFFFFFFFU;

BuildResult serial_build(const App& app, const ExploreOptions& opt) {
    detail::Stopwatch clock;
    const StateCodec codec(app.layout);
    detail::StateStore store(codec.size(), opt.store);
    BuildResult r;
    r.v.kind = VerdictKind::LivenessPass;
    Graph& g = r.g;
    std::vector<std::uint8_t> enc(codec.size());
    std::deque<GlobalState> queue;
    std::vector<std::uint32_t> depth;
    std::vector<Step> succ;

    codec.encode(app.initial, enc);
    store.insert(enc.data(), digest_bytes(enc));
    queue.push_back(app.initial);
    depth.push_back(0);
    g.parent.push_back(kRoot);
    g.parent_edge.push_back(kRoot);
    if (opt.check_invariants) {
        if (auto e = check_state_invariants(app, app.initial)) r.v.invariant_failure = *e;
    }

    for (std::uint32_t k = 0; !queue.empty(); ++k) {
        GlobalState s = std::move(queue.front());
        queue.pop_front();
        g.off.push_back(g.edges.size());
        successors(app, s, succ, opt.reverse_children);
        for (auto& st : succ) {
            codec.encode(st.next, enc);
            const auto [id, fresh] = store.insert(enc.data(), digest_bytes(enc));
            if (opt.check_invariants) detail::note_invariants(app, s, st, fresh, r.v.invariant_failure);
            if (fresh) {
                g.parent.push_back(k);
                g.parent_edge.push_back(static_cast<std::uint32_t>(g.edges.size()));
                depth.push_back(depth[k] + 1);
                r.v.stats.max_depth = std::max<std::uint64_t>(r.v.stats.max_depth, depth.back());
                queue.push_back(std::move(st.next));
            }
            g.edges.push_back(Edge{id, raw(st.unit), st.ordinal, st.progress, static_cast<std::uint8_t>(st.trigger)});
        }
        if (store.size() > opt.limits.max_states) {
            r.v.kind = VerdictKind::LimitExceeded;
            r.v.limit = "states";
            break;
        }
        if (r.v.stats.max_depth > opt.limits.max_depth) {
            r.v.kind = VerdictKind::LimitExceeded;
            r.v.limit = "depth";
            break;
        }
    }
    g.off.push_back(g.edges.size());
    r.v.stats.states = store.size();
    r.v.stats.transitions = g.edges.size();
    r.v.stats.seconds = clock.seconds();
    return r;
}

BuildResult parallel_build(const App& app, const ExploreOptions& opt) {
    detail::Stopwatch clock;
    const StateCodec codec(app.layout);
    detail::ShardedStore store(codec.size(), opt.store);
    BuildResult r;
    r.v.kind = VerdictKind::LivenessPass;

    struct Item {
        GlobalState s;
        std::uint64_t id;
    };
    struct RawEdge {
        std::uint64_t src, dst;
        Edge e;
    };
    std::vector<RawEdge> raw_edges;
    std::vector<Item> frontier;
    {
        const auto enc = codec.encode(app.initial);
        frontier.push_back({app.initial, store.insert(enc.data(), digest_bytes(enc), {}).first});
        if (opt.check_invariants) {
            if (auto e = check_state_invariants(app, app.initial)) r.v.invariant_failure = *e;
        }
    }
    std::uint64_t level = 0;
    while (!frontier.empty()) {
        std::vector<Item> next;
        std::string inv = r.v.invariant_failure;
        std::exception_ptr err;
#pragma omp parallel num_threads(opt.workers)
        {
            std::vector<Step> succ;
            std::vector<Item> local;
            std::vector<RawEdge> local_edges;
            std::vector<std::uint8_t> enc(codec.size());
            std::string my_inv;
#pragma omp for schedule(dynamic, 64) nowait
            for (std::size_t i = 0; i < frontier.size(); ++i) try {
                const Item& it = frontier[i];
                successors(app, it.s, succ, opt.reverse_children);
                for (auto& st : succ) {
                    codec.encode(st.next, enc);
                    const auto [id, fresh] =
                        store.insert(enc.data(), digest_bytes(enc), detail::Parent{it.id, raw(st.unit), st.ordinal});
                    if (opt.check_invariants) detail::note_invariants(app, it.s, st, fresh, my_inv);
                    local_edges.push_back(
                        {it.id, id, Edge{0, raw(st.unit), st.ordinal, st.progress, static_cast<std::uint8_t>(st.trigger)}});
                    if (fresh) local.push_back({std::move(st.next), id});
                }
            } catch (...) {
#pragma omp critical
                if (!err) err = std::current_exception();
            }
#pragma omp critical
            {
                next.insert(next.end(), std::make_move_iterator(local.begin()), std::make_move_iterator(local.end()));
                raw_edges.insert(raw_edges.end(), local_edges.begin(), local_edges.end());
                if (inv.empty()) inv = my_inv;
            }
        }
        if (err) std::rethrow_exception(err);
        r.v.invariant_failure = inv;
        if (!next.empty()) r.v.stats.max_depth = level + 1;
        frontier.swap(next);
        ++level;
        if (store.size() > opt.limits.max_states) {
            r.v.kind = VerdictKind::LimitExceeded;
            r.v.limit = "states";
            break;
        }
        if (level > opt.limits.max_depth) {
            r.v.kind = VerdictKind::LimitExceeded;
            r.v.limit = "depth";
            break;
        }
    }

    // Dense renumbering and CSR assembly.
    const auto offsets = store.offsets();
    const std::size_t n = store.size();
    auto dense = [&](std::uint64_t gid) {
        return static_cast<std::uint32_t>(offsets[gid % detail::ShardedStore::kShards] + gid / detail::ShardedStore::kShards);
    };
    Graph& g = r.g;
    g.off.assign(n + 1, 0);
    for (const auto& e : raw_edges) ++g.off[dense(e.src) + 1];
    for (std::size_t i = 0; i < n; ++i) g.off[i + 1] += g.off[i];
    g.edges.resize(raw_edges.size());
    std::vector<std::uint64_t> fill(g.off.begin(), g.off.end() - 1);
    // Sort each node's edges by (unit, ordinal) so the CSR does not depend on thread timing.
    for (const auto& e : raw_edges) {
        Edge x = e.e;
        x.dst = dense(e.dst);
        g.edges[fill[dense(e.src)]++] = x;
    }
    for (std::size_t i = 0; i < n; ++i) {
        std::sort(g.edges.begin() + static_cast<std::ptrdiff_t>(g.off[i]), g.edges.begin() + static_cast<std::ptrdiff_t>(g.off[i + 1]),
                  [](const Edge& a, const Edge& b) { return std::tie(a.unit, a.ordinal) < std::tie(b.unit, b.ordinal); });
    }
    g.parent.assign(n, kRoot);
    g.parent_edge.assign(n, kRoot);
    for (std::size_t k = 0; k < detail::ShardedStore::kShards; ++k) {
        for (std::uint64_t local = 0; offsets[k] + local < offsets[k + 1]; ++local) {
            const auto gid = local * detail::ShardedStore::kShards + k;
            const auto& p = store.parent(gid);
            if (p.from == ~0ULL) continue;
            const auto me = dense(gid);
            const auto from = dense(p.from);
            g.parent[me] = from;
            for (auto e = g.off[from]; e < g.off[from + 1]; ++e) {
                if (g.edges[e].dst == me && g.edges[e].unit == p.unit && g.edges[e].ordinal == p.ordinal) {
                    g.parent_edge[me] = static_cast<std::uint32_t>(e);
                    break;
                }
            }
        }
    }
    r.v.stats.states = n;
    r.v.stats.transitions = g.edges.size();
    r.v.stats.seconds = clock.seconds();
    return r;
}

/// Strongly connected components of `g` without the edges carrying `skip`'s
/// progress label (iterative Tarjan).
std::vector<std::uint32_t> components(const Graph& g, std::uint8_t skip) {
    const std::size_t n = g.n();
    constexpr std::uint32_t kUnset = 0xFFFFFFFFU;
    std::vector<std::uint32_t> index(n, kUnset), low(n, 0), comp(n, kUnset);
    std::vector<std::uint32_t> stack;
    std::vector<bool> on(n, false);
    struct Call {
        std::uint32_t v;
        std::uint64_t e;
    };
    std::vector<Call> calls;
    std::uint32_t counter = 0, ncomp = 0;
    for (std::uint32_t root = 0; root < n; ++root) {
        if (index[root] != kUnset) continue;
        calls.push_back({root, g.off[root]});
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on[root] = true;
        while (!calls.empty()) {
            Call& c = calls.back();
            if (c.e < g.off[c.v + 1]) {
                const Edge& e = g.edges[c.e++];
                if (e.progress == skip && skip != kNone) continue;
                const auto w = e.dst;
                if (index[w] == kUnset) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on[w] = true;
                    calls.push_back({w, g.off[w]});
                } else if (on[w]) {
                    low[c.v] = std::min(low[c.v], index[w]);
                }
                continue;
            }
            const auto v = c.v;
            calls.pop_back();
            if (!calls.empty()) low[calls.back().v] = std::min(low[calls.back().v], low[v]);
            if (low[v] == index[v]) {
                std::uint32_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on[w] = false;
                    comp[w] = ncomp;
                } while (w != v);
                ++ncomp;
            }
        }
    }
    return comp;
}

struct Lasso {
    std::uint8_t task = 0;
    std::vector<std::uint32_t> prefix;  // edge indices
    std::vector<std::uint32_t> cycle;
};

std::uint32_t source_of(const Graph& g, std::uint32_t edge) {
    return static_cast<std::uint32_t>(std::upper_bound(g.off.begin(), g.off.end(), edge) - g.off.begin() - 1);
}

std::optional<Lasso> find_lasso(const App& app, const Graph& g) {
    for (const UnitId t : app.live_tasks) {
        const auto skip = raw(t);
        const auto comp = components(g, skip);
        for (std::uint32_t u = 0; u < g.n(); ++u) {
            for (auto e = g.off[u]; e < g.off[u + 1]; ++e) {
                const Edge& te = g.edges[e];
                if (!te.trigger || comp[te.dst] != comp[u]) continue;
                Lasso l;
                l.task = skip;
                for (auto cur = u; g.parent[cur] != kRoot; cur = g.parent[cur]) l.prefix.push_back(g.parent_edge[cur]);
                std::reverse(l.prefix.begin(), l.prefix.end());
                // Shortest path back from the trigger target to u inside the component.
                l.cycle.push_back(static_cast<std::uint32_t>(e));
                const auto v = te.dst;
                if (v != u) {
                    std::vector<std::uint32_t> via(g.n(), kRoot);
                    std::deque<std::uint32_t> q{v};
                    std::vector<bool> seen(g.n(), false);
                    seen[v] = true;
                    while (!q.empty() && !seen[u]) {
                        const auto x = q.front();
                        q.pop_front();
                        for (auto f = g.off[x]; f < g.off[x + 1]; ++f) {
                            const Edge& fe = g.edges[f];
                            if (fe.progress == skip || comp[fe.dst] != comp[u] || seen[fe.dst]) continue;
                            seen[fe.dst] = true;
                            via[fe.dst] = static_cast<std::uint32_t>(f);
                            q.push_back(fe.dst);
                        }
                    }
                    std::vector<std::uint32_t> back;
                    for (auto cur = u; cur != v; cur = source_of(g, via[cur])) back.push_back(via[cur]);
                    std::reverse(back.begin(), back.end());
                    l.cycle.insert(l.cycle.end(), back.begin(), back.end());
                }
                return l;
            }
        }
    }
    return std::nullopt;
}

Verdict liveness_from_graph(const App& app, BuildResult r) {
    detail::Stopwatch clock;
    if (r.v.kind == VerdictKind::LimitExceeded) return r.v;
    const auto lasso = find_lasso(app, r.g);
    r.v.stats.seconds += clock.seconds();
    if (!lasso) {
        r.v.kind = VerdictKind::LivenessPass;
        return r.v;
    }
    const StateCodec codec(app.layout);
    std::vector<PathStep> path;
    GlobalState s = app.initial;
    auto walk = [&](std::uint32_t e) {
        const Edge& x = r.g.edges[e];
        Step st = apply_step(app, s, UnitId{x.unit}, x.ordinal);
        s = st.next;
        path.push_back({st.unit, st.ordinal, s});
    };
    for (auto e : lasso->prefix) walk(e);
    const std::size_t loop_start = path.size();
    for (auto e : lasso->cycle) walk(e);
    r.v.kind = VerdictKind::LivenessFail;
    r.v.starving = app.layout.unit_names[lasso->task];
    r.v.trace = detail::make_trace(app, codec, path);
    r.v.trace->loop_start = loop_start;
    return r.v;
}

}  // namespace

Verdict check_liveness(const App& app, const ExploreOptions& options) {
    if (options.limits.max_states == 0 || options.limits.max_depth == 0) {
        throw ModelError(ModelError::Kind::BadConfig, "limits must be positive");
    }
    auto built = options.workers > 1 ? parallel_build(app, options) : serial_build(app, options);
    return liveness_from_graph(app, std::move(built));
}

std::vector<std::vector<std::uint8_t>> reachable_states(const App& app, const ExploreOptions& options) {
    const StateCodec codec(app.layout);
    detail::StateStore store(codec.size(), StoreMode::Exact);
    std::vector<std::vector<std::uint8_t>> out;
    std::deque<GlobalState> queue{app.initial};
    std::vector<Step> succ;
    auto enc = codec.encode(app.initial);
    store.insert(enc.data(), digest_bytes(enc));
    out.push_back(enc);
    while (!queue.empty()) {
        const GlobalState s = std::move(queue.front());
        queue.pop_front();
        successors(app, s, succ, options.reverse_children);
        for (auto& st : succ) {
            codec.encode(st.next, enc);
            if (store.insert(enc.data(), digest_bytes(enc)).second) {
                out.push_back(enc);
                if (out.size() > options.limits.max_states) {
                    throw ModelError(ModelError::Kind::BadConfig, "reachable set exceeds the state limit");
                }
                queue.push_back(std::move(st.next));
            }
        }
    }
    return out;
}

}  // namespace rtosmc
