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
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rtosmc {

using detail::PathStep;

namespace {

struct Frame {
    GlobalState s;
    std::vector<Step> succ;
    std::size_t next = 0;
    UnitId unit{};
    std::uint8_t ordinal = 0;
};

std::vector<PathStep> frames_to_path(const std::vector<Frame>& frames) {
    std::vector<PathStep> path;
    for (std::size_t i = 1; i < frames.size(); ++i) path.push_back({frames[i].unit, frames[i].ordinal, frames[i].s});
    return path;
}

Verdict serial_safety(const App& app, const ExploreOptions& opt) {
    detail::Stopwatch clock;
    const StateCodec codec(app.layout);
    detail::StateStore store(codec.size(), opt.store);
    std::vector<std::uint8_t> enc(codec.size());
    Verdict v;
    v.kind = VerdictKind::SafetyPass;

    auto visit = [&](const GlobalState& s) {
        codec.encode(s, enc);
        return store.insert(enc.data(), digest_bytes(enc)).second;
    };

    std::vector<Frame> frames;
    visit(app.initial);
    if (opt.check_invariants) {
        if (auto e = check_state_invariants(app, app.initial)) v.invariant_failure = *e;
    }
    frames.push_back(Frame{app.initial, {}, 0, UnitId{0}, 0});
    successors(app, app.initial, frames.back().succ, opt.reverse_children);
    v.stats.transitions += frames.back().succ.size();

    auto finish = [&](VerdictKind kind) {
        v.kind = kind;
        v.stats.states = store.size();
        v.stats.seconds = clock.seconds();
        return v;
    };

    if (frames.back().succ.empty()) {
        v.trace = detail::make_trace(app, codec, {});
        return finish(VerdictKind::Deadlock);
    }

    while (!frames.empty()) {
        Frame& top = frames.back();
        if (top.next == top.succ.size()) {
            frames.pop_back();
            continue;
        }
        Step st = std::move(top.succ[top.next++]);
        if (st.violation && opt.assertions) {
            auto path = frames_to_path(frames);
            path.push_back({st.unit, st.ordinal, st.next});
            v.violation = st.violation;
            v.trace = detail::make_trace(app, codec, path);
            return finish(VerdictKind::SafetyFail);
        }
        const bool fresh = visit(st.next);
        if (opt.check_invariants) detail::note_invariants(app, top.s, st, fresh, v.invariant_failure);
        if (!fresh) continue;
        if (store.size() > opt.limits.max_states) {
            v.limit = "states";
            return finish(VerdictKind::LimitExceeded);
        }
        if (frames.size() > opt.limits.max_depth) {
            v.limit = "depth";
            return finish(VerdictKind::LimitExceeded);
        }
        Frame f{std::move(st.next), {}, 0, st.unit, st.ordinal};
        successors(app, f.s, f.succ, opt.reverse_children);
        v.stats.transitions += f.succ.size();
        frames.push_back(std::move(f));
        v.stats.max_depth = std::max<std::uint64_t>(v.stats.max_depth, frames.size() - 1);
        if (frames.back().succ.empty()) {
            v.trace = detail::make_trace(app, codec, frames_to_path(frames));
            return finish(VerdictKind::Deadlock);
        }
    }
    return finish(VerdictKind::SafetyPass);
}

struct Item {
    GlobalState s;
    std::uint64_t id = 0;
};

std::vector<PathStep> parent_path(const App& app, const detail::ShardedStore& store, std::uint64_t id) {
    std::vector<detail::Parent> chain;
    for (auto cur = id; store.parent(cur).from != ~0ULL; cur = store.parent(cur).from) chain.push_back(store.parent(cur));
    std::reverse(chain.begin(), chain.end());
    std::vector<PathStep> path;
    GlobalState s = app.initial;
    for (const auto& p : chain) {
        Step st = apply_step(app, s, UnitId{p.unit}, p.ordinal);
        s = st.next;
        path.push_back({st.unit, st.ordinal, s});
    }
    return path;
}

/// Level-synchronous breadth-first search over a shared visited store.
Verdict parallel_safety(const App& app, const ExploreOptions& opt) {
    detail::Stopwatch clock;
    const StateCodec codec(app.layout);
    detail::ShardedStore store(codec.size(), opt.store);
    Verdict v;

    std::vector<Item> frontier;
    {
        const auto enc = codec.encode(app.initial);
        frontier.push_back({app.initial, store.insert(enc.data(), digest_bytes(enc), {}).first});
        if (opt.check_invariants) {
            if (auto e = check_state_invariants(app, app.initial)) v.invariant_failure = *e;
        }
    }

    auto finish = [&](VerdictKind kind) {
        v.kind = kind;
        v.stats.states = store.size();
        v.stats.seconds = clock.seconds();
        return v;
    };

    // Failure found on a level: (frontier index, successor index) keeps the
    // report independent of thread timing.
    struct Found {
        std::size_t at = ~std::size_t{0};
        std::size_t k = 0;
        bool deadlock = false;
        Step step;
    };

    std::uint64_t level = 0;
    while (!frontier.empty()) {
        if (level > opt.limits.max_depth) {
            v.limit = "depth";
            return finish(VerdictKind::LimitExceeded);
        }
        std::vector<Item> next;
        Found found;
        std::string inv = v.invariant_failure;
        std::uint64_t transitions = 0;
        bool over = false;
        std::exception_ptr err;
#pragma omp parallel num_threads(opt.workers)
        {
            std::vector<Step> succ;
            std::vector<Item> local;
            std::vector<std::uint8_t> enc(codec.size());
            Found mine;
            std::string my_inv;
            std::uint64_t my_tr = 0;
#pragma omp for schedule(dynamic, 64) nowait
            for (std::size_t i = 0; i < frontier.size(); ++i) try {
                const Item& it = frontier[i];
                successors(app, it.s, succ, opt.reverse_children);
                my_tr += succ.size();
                if (succ.empty() && i < mine.at) {
                    mine = Found{i, 0, true, {}};
                    continue;
                }
                for (std::size_t k = 0; k < succ.size(); ++k) {
                    Step& st = succ[k];
                    if (st.violation && opt.assertions) {
                        if (i < mine.at || (i == mine.at && k < mine.k)) mine = Found{i, k, false, st};
                        continue;
                    }
                    codec.encode(st.next, enc);
                    const auto [id, fresh] =
                        store.insert(enc.data(), digest_bytes(enc), detail::Parent{it.id, raw(st.unit), st.ordinal});
                    if (opt.check_invariants) detail::note_invariants(app, it.s, st, fresh, my_inv);
                    if (fresh) local.push_back({std::move(st.next), id});
                }
            } catch (...) {
#pragma omp critical
                if (!err) err = std::current_exception();
            }
#pragma omp critical
            {
                next.insert(next.end(), std::make_move_iterator(local.begin()), std::make_move_iterator(local.end()));
                transitions += my_tr;
                if (mine.at < found.at || (mine.at == found.at && mine.k < found.k)) found = std::move(mine);
                if (inv.empty()) inv = my_inv;
            }
        }
        if (err) std::rethrow_exception(err);
        v.stats.transitions += transitions;
        v.invariant_failure = inv;
        if (found.at != ~std::size_t{0}) {
            auto path = parent_path(app, store, frontier[found.at].id);
            if (found.deadlock) {
                v.trace = detail::make_trace(app, codec, path);
                return finish(VerdictKind::Deadlock);
            }
            path.push_back({found.step.unit, found.step.ordinal, found.step.next});
            v.violation = found.step.violation;
            v.trace = detail::make_trace(app, codec, path);
            return finish(VerdictKind::SafetyFail);
        }
        over = store.size() > opt.limits.max_states;
        if (over) {
            v.limit = "states";
            return finish(VerdictKind::LimitExceeded);
        }
        if (!next.empty()) v.stats.max_depth = level + 1;
        frontier.swap(next);
        ++level;
    }
    return finish(VerdictKind::SafetyPass);
}

}  // namespace

Verdict check_safety(const App& app, const ExploreOptions& options) {
    if (options.limits.max_states == 0 || options.limits.max_depth == 0) {
        throw ModelError(ModelError::Kind::BadConfig, "limits must be positive");
    }
    return options.workers > 1 ? parallel_safety(app, options) : serial_safety(app, options);
}

}  // namespace rtosmc
