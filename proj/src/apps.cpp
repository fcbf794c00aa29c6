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
#include <cctype>

namespace rtosmc {

namespace {

using P = PropertyKind;

/// Parameter value to a block duration; negative means no timeout.
std::uint8_t ticks(int v) { return v < 0 ? kForever : static_cast<std::uint8_t>(v); }

std::uint8_t inc(std::uint8_t v, int modulus) { return static_cast<std::uint8_t>((v + 1) % modulus); }

/// Appends a yield node when running cooperatively; returns the label that
/// the loop should jump to afterwards.
void coop_yield(ProgramBuilder& b, bool cooperative, const std::string& name, Label back) {
    if (!cooperative) return;
    b.node(
        name,
        [back](Ctx& c) {
            c.yield();
            c.go(back);
        },
        true);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    return s;
}

// Producer and consumer at the same priority above idle. Both delay after
// each round; the consumer drains the queue without blocking.
App build_pollq(const AppOptions& o) {
    AppAssembler a("PollQ", o);
    const int m = o.param("modulus", 4);
    const auto cap = static_cast<std::uint8_t>(o.param("capacity", 2));
    const auto dp = ticks(o.param("producer_delay", 2));
    const auto dc = ticks(o.param("consumer_delay", 2));
    const UnitId idle = a.add_task("idle", 0);
    const UnitId prod = a.add_task("producer", 1);
    const UnitId cons = a.add_task("consumer", 1);
    const auto q = a.add_queue("q", cap);
    const auto seq = a.add_var("seq");
    const auto expect = a.add_var("expect");
    a.set_program(idle, a.idle_program());
    {
        ProgramBuilder b(prod);
        const Label send = b.node("send", [=](Ctx& c) {
            const auto r = c.send(q, c.var(seq), 0);
            c.check(P::S2, r.outcome == Outcome::Ok, "queue full on non-blocking send");
            if (r.outcome == Outcome::Ok) c.var(seq) = inc(c.var(seq), m);
        });
        const Label wait = b.node("wait", [=](Ctx& c) { c.delay(dp); }, true);
        b.progress(wait);
        b.node("verify", [=, cap = cap](Ctx& c) {
            c.check(P::S0, c.s.ipc[q].count < cap, "consumer fell behind during the delay");
            c.go(send);
        });
        a.set_program(prod, b.build());
    }
    {
        ProgramBuilder b(cons);
        const Label recv = b.declare("recv");
        const Label wait = b.declare("wait");
        b.define(recv, [=](Ctx& c) {
            const auto r = c.receive(q, 0);
            if (r.outcome == Outcome::Ok) {
                c.check(P::S3, r.value == c.var(expect), "out-of-order message");
                c.var(expect) = inc(c.var(expect), m);
                c.go(recv);
            } else {
                c.go(wait);
            }
        });
        b.define(
            wait,
            [=](Ctx& c) {
                c.delay(dc);
                c.go(recv);
            },
            true);
        b.progress(recv);
        a.set_program(cons, b.build());
    }
    a.invariant = [=](const GlobalState& s) -> std::optional<std::string> {
        const auto& obj = s.ipc[q];
        for (std::uint8_t i = 0; i < obj.count; ++i) {
            if (obj.buffer[i] != (s.vars[expect] + i) % m) return "queue contents out of sequence";
        }
        if ((s.vars[expect] + obj.count) % m != s.vars[seq]) return "message lost or duplicated";
        return std::nullopt;
    };
    return a.finish({P::S0, P::S2, P::S3}, false);
}

// Two pairs of tasks guarding a shared variable with a binary semaphore each.
// The idle-priority pair polls Take(0) and yields only on failure; the higher
// pair blocks with a timeout and delays after each round.
App build_semtest(const AppOptions& o) {
    AppAssembler a("Semtest", o);
    const auto d_take = ticks(o.param("take_timeout", 5));
    const auto d_rest = ticks(o.param("rest_delay", 5));
    const UnitId idle = a.add_task("idle", 0);
    const UnitId t1 = a.add_task("poll1", 0);
    const UnitId t2 = a.add_task("poll2", 0);
    const UnitId t3 = a.add_task("block1", 1);
    const UnitId t4 = a.add_task("block2", 1);
    const auto sem1 = a.add_lock("sem1", 1, 1, false);
    const auto sem2 = a.add_lock("sem2", 1, 1, false);
    const auto owner1 = a.add_var("owner1");
    const auto owner2 = a.add_var("owner2");
    const auto handoff = a.add_var("handoff");
    a.set_program(idle, a.idle_program());

    for (const UnitId self : {t1, t2}) {
        ProgramBuilder b(self);
        const auto me = static_cast<std::uint8_t>(raw(self));
        const Label take = b.declare("take");
        const Label enter = b.declare("enter");
        const Label leave = b.declare("leave");
        const Label yield = b.declare("yield");
        b.define(take, [=](Ctx& c) {
            const auto r = c.take(sem1, 0);
            c.go(r.outcome == Outcome::Ok ? enter : yield);
        });
        b.define(enter, [=](Ctx& c) {
            c.check(P::S4, c.var(owner1) == 0, "two holders of sem1");
            c.var(owner1) = me;
        });
        b.define(leave, [=](Ctx& c) {
            c.check(P::S4, c.var(owner1) == me, "sem1 section entered by another task");
            c.var(owner1) = 0;
            const auto r = c.give(sem1);
            c.check(P::S2, r.outcome == Outcome::Ok, "give on a full semaphore");
            c.go(take);
        });
        b.progress(leave);
        b.define(
            yield,
            [=](Ctx& c) {
                c.yield();
                c.go(take);
            },
            true);
        a.set_program(self, b.build());
    }

    for (const UnitId self : {t3, t4}) {
        ProgramBuilder b(self);
        const auto me = static_cast<std::uint8_t>(raw(self));
        const auto partner = static_cast<std::uint8_t>(raw(self == t3 ? t4 : t3));
        const Label take = b.declare("take");
        b.define_call(
            take, [=](Ctx& c) { return c.take(sem2, d_take); },
            [=](Ctx& c, IpcResult r) {
                c.check(P::S1, r.outcome == Outcome::Ok, "blocking take timed out");
                c.go(r.outcome == Outcome::Ok ? Label{static_cast<std::uint8_t>(take.idx + 2)} : take);
            });
        b.node("enter", [=](Ctx& c) {
            c.check(P::S4, c.var(owner2) == 0, "two holders of sem2");
            c.var(owner2) = me;
        });
        const Label leave = b.node("leave", [=](Ctx& c) {
            c.check(P::S4, c.var(owner2) == me, "sem2 section entered by another task");
            c.var(owner2) = 0;
            const bool waiting = c.s.ipc[sem2].nwait > 0;
            if (c.var(handoff) == me) c.var(handoff) = 0;
            const auto r = c.give(sem2);
            c.check(P::S2, r.outcome == Outcome::Ok, "give on a full semaphore");
            if (waiting) c.var(handoff) = partner;
        });
        b.progress(leave);
        b.node("rest", [=](Ctx& c) { c.delay(d_rest); }, true);
        b.node("verify", [=](Ctx& c) {
            c.check(P::S0, c.var(handoff) != partner, "partner did not finish its round during the delay");
            c.go(take);
        });
        a.set_program(self, b.build());
    }
    return a.finish({P::S0, P::S1, P::S2, P::S4}, false);
}

// Three producer/consumer pairs on single-slot queues: a high-priority
// producer blocking on Send with a low consumer polling Receive(0); a low
// producer using Send(0) with a high consumer blocking on Receive; and two
// low-priority tasks that both block.
App build_blockq(const AppOptions& o) {
    AppAssembler a("BlockQ", o);
    const int m = o.param("modulus", 4);
    const auto d1 = ticks(o.param("send_timeout", 16));
    const auto d2 = ticks(o.param("receive_timeout", -1));
    const auto d3 = ticks(o.param("pair3_timeout", -1));
    a.set_max_delay(static_cast<std::uint8_t>(o.param("max_delay", 16)));
    const bool coop = a.cooperative();
    const UnitId idle = a.add_task("idle", 0);
    const UnitId c1 = a.add_task("consumer1", 0);
    const UnitId p2 = a.add_task("producer2", 0);
    const UnitId p3 = a.add_task("producer3", 0);
    const UnitId c3 = a.add_task("consumer3", 0);
    const UnitId p1 = a.add_task("producer1", 1);
    const UnitId c2 = a.add_task("consumer2", 1);
    std::size_t q[3];
    std::size_t seq[3];
    std::size_t expect[3];
    for (int i = 0; i < 3; ++i) q[i] = a.add_queue("q" + std::to_string(i + 1), 1);
    for (int i = 0; i < 3; ++i) {
        seq[i] = a.add_var("seq" + std::to_string(i + 1));
        expect[i] = a.add_var("expect" + std::to_string(i + 1));
    }
    a.set_program(idle, a.idle_program());

    // Producer loop: send, check, advance. A blocking send must succeed (S1),
    // a non-blocking one expects room (S2). Low-priority tasks get an extra
    // yield per round when cooperative.
    auto producer = [&](UnitId self, int i, std::uint8_t delay, PropertyKind kind) {
        const bool extra = coop && self != p1;
        ProgramBuilder b(self);
        const Label send = b.declare("send");
        const Label sent = b.declare("sent");
        const Label yield = extra ? b.declare("yield") : send;
        b.define_call(
            send, [=](Ctx& c) { return c.send(q[i], c.var(seq[i]), delay); },
            [=](Ctx& c, IpcResult r) {
                c.check(kind, r.outcome == Outcome::Ok, "send failed");
                if (r.outcome == Outcome::Ok) c.var(seq[i]) = inc(c.var(seq[i]), m);
                c.go(sent);
            });
        b.define(sent, [=](Ctx& c) { c.go(yield); });
        b.progress(sent);
        if (extra) {
            b.define(
                yield,
                [=](Ctx& c) {
                    c.yield();
                    c.go(send);
                },
                true);
        }
        return b.build();
    };
    auto consumer = [&](UnitId self, int i, std::uint8_t delay) {
        const bool extra = coop && self != c2;
        ProgramBuilder b(self);
        const Label recv = b.declare("recv");
        const Label got = b.declare("got");
        const Label yield = extra ? b.declare("yield") : recv;
        b.define_call(
            recv, [=](Ctx& c) { return c.receive(q[i], delay); },
            [=](Ctx& c, IpcResult r) {
                if (r.outcome == Outcome::Ok) {
                    c.check(P::S3, r.value == c.var(expect[i]), "out-of-order message");
                    c.var(expect[i]) = inc(c.var(expect[i]), m);
                    c.go(got);
                } else {
                    c.go(yield);
                }
            });
        b.define(got, [=](Ctx& c) { c.go(yield); });
        b.progress(got);
        if (extra) {
            b.define(
                yield,
                [=](Ctx& c) {
                    c.yield();
                    c.go(recv);
                },
                true);
        }
        return b.build();
    };
    a.set_program(p1, producer(p1, 0, d1, P::S1));
    a.set_program(c1, consumer(c1, 0, 0));
    a.set_program(p2, producer(p2, 1, 0, P::S2));
    a.set_program(c2, consumer(c2, 1, d2));
    a.set_program(p3, producer(p3, 2, d3, P::S1));
    a.set_program(c3, consumer(c3, 2, d3));
    // A woken task has its Ok outcome recorded but has not yet advanced its
    // counter, so count it as in flight.
    const UnitId prods[3] = {p1, p2, p3};
    const UnitId conss[3] = {c1, c2, c3};
    a.invariant = [=](const GlobalState& s) -> std::optional<std::string> {
        for (int i = 0; i < 3; ++i) {
            const int sent = s.vars[seq[i]] + (s.tasks[raw(prods[i])].outcome == Outcome::Ok ? 1 : 0);
            const int taken = s.vars[expect[i]] + (s.tasks[raw(conss[i])].outcome == Outcome::Ok ? 1 : 0);
            if ((taken + s.ipc[q[i]].count) % m != sent % m) return "message lost or duplicated";
            if (s.ipc[q[i]].count == 1 && s.ipc[q[i]].buffer[0] != taken % m) return "queue holds a stale value";
        }
        return std::nullopt;
    };
    return a.finish({P::S1, P::S2, P::S3}, true);
}

// An idle-priority sender feeds a high-priority peeker (which suspends itself
// after each peek) and a medium-priority receiver. The sender resumes the
// peeker once the queue is drained.
App build_qpeek(const AppOptions& o) {
    AppAssembler a("QPeek", o);
    const int m = o.param("modulus", 4);
    const bool coop = a.cooperative();
    const UnitId idle = a.add_task("idle", 0);
    const UnitId low = a.add_task("sender", 0);
    const UnitId med = a.add_task("receiver", 1);
    const UnitId high = a.add_task("peeker", 2);
    const auto q = a.add_queue("q", 1);
    const auto seq = a.add_var("seq");
    const auto hexp = a.add_var("peek_expect");
    const auto mexp = a.add_var("recv_expect");
    a.set_program(idle, a.idle_program());
    {
        ProgramBuilder b(low);
        const Label send = b.node("send", [=](Ctx& c) {
            const auto r = c.send(q, c.var(seq), 0);
            c.check(P::S2, r.outcome == Outcome::Ok, "queue not drained before the next send");
            if (r.outcome == Outcome::Ok) c.var(seq) = inc(c.var(seq), m);
        });
        coop_yield(b, coop, "yield_sent", Label{static_cast<std::uint8_t>(send.idx + 2)});
        const Label resume = b.node("resume", [=](Ctx& c) {
            c.check(P::S2, c.s.ipc[q].count == 0, "message left in the queue");
            c.resume(high);
            if (!coop) c.go(send);
        });
        b.progress(resume);
        coop_yield(b, coop, "yield_resumed", send);
        a.set_program(low, b.build());
    }
    {
        ProgramBuilder b(high);
        const Label peek = b.declare("peek");
        b.define_call(
            peek, [=](Ctx& c) { return c.peek(q, kForever); },
            [=](Ctx& c, IpcResult r) {
                c.check(P::S1, r.outcome == Outcome::Ok, "peek returned without data");
                c.check(P::S3, r.value == c.var(hexp), "peeked an unexpected value");
                c.var(hexp) = inc(c.var(hexp), m);
                c.go(Label{static_cast<std::uint8_t>(peek.idx + 2)});
            });
        const Label sleep = b.node(
            "suspend",
            [=](Ctx& c) {
                c.suspend_self();
                c.go(peek);
            },
            true);
        b.progress(sleep);
        a.set_program(high, b.build());
    }
    {
        ProgramBuilder b(med);
        const Label recv = b.declare("recv");
        const Label got = b.declare("got");
        b.define_call(
            recv, [=](Ctx& c) { return c.receive(q, kForever); },
            [=](Ctx& c, IpcResult r) {
                c.check(P::S1, r.outcome == Outcome::Ok, "receive returned without data");
                c.check(P::S3, r.value == c.var(mexp), "received an unexpected value");
                c.var(mexp) = inc(c.var(mexp), m);
                c.go(got);
            });
        b.define(got, [=](Ctx& c) { c.go(recv); });
        b.progress(got);
        a.set_program(med, b.build());
    }
    return a.finish({P::S1, P::S2, P::S3}, true);
}

// A continuously counting task, a limited worker resumed once per round, and
// a controller that suspends the counter to read it, resumes the worker,
// delays, and then expects the worker's round to be complete. An optional
// high-priority check task wakes periodically.
App build_dynamic(const AppOptions& o) {
    AppAssembler a("Dynamic", o);
    const int m = o.param("modulus", 4);
    const auto wait = ticks(o.param("control_delay", 4));
    const auto period = ticks(o.param("check_period", 5));
    const bool coop = a.cooperative();
    const UnitId idle = a.add_task("idle", 0);
    const UnitId worker = a.add_task("limited", 0);
    const UnitId cont = a.add_task("continuous", 0);
    const UnitId ctrl = a.add_task("controller", 0);
    std::optional<UnitId> check;
    if (o.with_check_task) check = a.add_task("check", 1);
    const auto q = a.add_queue("q", 1);
    const auto counter = a.add_var("counter");
    const auto snap = a.add_var("snapshot");
    const auto done = a.add_var("done");
    const auto seq = a.add_var("seq");
    const auto expect = a.add_var("expect");
    a.set_program(idle, a.idle_program());
    a.start_suspended(worker);
    {
        ProgramBuilder b(worker);
        b.node("send", [=](Ctx& c) {
            const auto r = c.send(q, c.var(seq), 0);
            c.check(P::S2, r.outcome == Outcome::Ok, "result slot still occupied");
            if (r.outcome == Outcome::Ok) c.var(seq) = inc(c.var(seq), m);
        });
        const Label fin = b.node("finish", [=](Ctx& c) { c.var(done) = 1; });
        b.progress(fin);
        b.node("suspend", [](Ctx& c) { c.suspend_self(); c.go(Label{0}); }, true);
        a.set_program(worker, b.build());
    }
    {
        ProgramBuilder b(cont);
        const Label step = b.node("increment", [=](Ctx& c) {
            c.var(counter) = inc(c.var(counter), m);
            if (!coop) c.go(Label{0});
        });
        b.progress(step);
        coop_yield(b, coop, "yield", Label{0});
        a.set_program(cont, b.build());
    }
    {
        ProgramBuilder b(ctrl);
        b.node("suspend_counter", [=](Ctx& c) { c.suspend(cont); }, true);
        b.node("snapshot", [=](Ctx& c) { c.var(snap) = static_cast<std::uint8_t>(c.var(counter) + 1); });
        b.node("compare", [=](Ctx& c) {
            c.check(P::S4, c.var(snap) == c.var(counter) + 1, "counter changed while its owner was suspended");
            c.var(snap) = 0;
        });
        b.node("resume_counter", [=](Ctx& c) { c.resume(cont); });
        b.node("resume_limited", [=](Ctx& c) {
            c.var(done) = 0;
            c.resume(worker);
        });
        b.node("wait", [=](Ctx& c) { c.delay(wait); }, true);
        b.node("verify", [=](Ctx& c) {
            c.check(P::S0, c.var(done) == 1, "limited task did not finish during the delay");
        });
        const Label collect = b.node("collect", [=](Ctx& c) {
            const auto r = c.receive(q, 0);
            c.check(P::S2, r.outcome == Outcome::Ok, "no result after the round");
            if (r.outcome == Outcome::Ok) {
                c.check(P::S3, r.value == c.var(expect), "result out of order");
                c.var(expect) = inc(c.var(expect), m);
            }
            c.go(Label{0});
        });
        b.progress(collect);
        a.set_program(ctrl, b.build());
    }
    if (check) {
        ProgramBuilder b(*check);
        const Label l = b.node("check", [=](Ctx& c) { c.delay(period); }, true);
        b.progress(l);
        a.set_program(*check, b.build());
    }
    a.invariant = [=](const GlobalState& s) -> std::optional<std::string> {
        if ((s.vars[expect] + s.ipc[q].count) % m != s.vars[seq]) return "result lost or duplicated";
        return std::nullopt;
    };
    return a.finish({P::S0, P::S2, P::S3, P::S4}, true);
}

// Two idle-priority tasks, each exercising its own counting semaphore: take
// every count without blocking, then give every count back.
App build_countsem(const AppOptions& o) {
    AppAssembler a("Countsem", o);
    const int max = o.param("max_count", 2);
    const auto fix = ticks(o.param("fix_delay_ticks", 3));
    const bool coop = a.cooperative();
    const UnitId idle = a.add_task("idle", 0);
    const UnitId t1 = a.add_task("counter1", 0);
    const UnitId t2 = a.add_task("counter2", 0);
    const auto s1 = a.add_lock("sem1", static_cast<std::uint8_t>(max), static_cast<std::uint8_t>(max), false);
    const auto s2 = a.add_lock("sem2", static_cast<std::uint8_t>(max), static_cast<std::uint8_t>(max), false);
    a.set_program(idle, a.idle_program());
    for (const auto& [self, sem] : {std::pair{t1, s1}, std::pair{t2, s2}}) {
        ProgramBuilder b(self);
        for (int i = 0; i < max; ++i) {
            b.node("take" + std::to_string(i + 1), [sem = sem](Ctx& c) {
                const auto r = c.take(sem, 0);
                c.check(P::S2, r.outcome == Outcome::Ok, "count missing from the semaphore");
            });
        }
        for (int i = 0; i < max; ++i) {
            const bool last = i + 1 == max;
            const Label l = b.node("give" + std::to_string(i + 1), [sem = sem, last, coop, fix = o.fix_delay](Ctx& c) {
                const auto r = c.give(sem);
                c.check(P::S5, r.outcome == Outcome::Ok, "more gives than takes");
                if (last && !coop && !fix) c.go(Label{0});
            });
            if (last) b.progress(l);
        }
        if (o.fix_delay) {
            b.node("rest", [fix](Ctx& c) { c.delay(fix); c.go(Label{0}); }, true);
        } else {
            coop_yield(b, coop, "yield", Label{0});
        }
        a.set_program(self, b.build());
    }
    return a.finish({P::S2, P::S5}, true);
}

// Mutex holder at idle priority resumes a medium and a high task that both
// block on the mutex, checks it inherited the high priority, then releases.
App build_recmutex(const AppOptions& o) {
    AppAssembler a("Recmutex", o);
    const bool coop = a.cooperative();
    const UnitId idle = a.add_task("idle", 0);
    const UnitId low = a.add_task("low", 0);
    const UnitId med = a.add_task("medium", 1);
    const UnitId high = a.add_task("high", 2);
    const auto mx = a.add_lock("mutex", 1, 1, true);
    const auto inside = a.add_var("inside");
    a.set_program(idle, a.idle_program());

    auto enter = [=](std::uint8_t me) {
        return [=](Ctx& c) {
            c.check(P::S4, c.var(inside) == 0, "two tasks inside the mutex section");
            c.var(inside) = me;
        };
    };
    auto leave = [=](std::uint8_t me) {
        return [=](Ctx& c) {
            c.check(P::S4, c.var(inside) == me, "mutex section entered by another task");
            c.var(inside) = 0;
            const auto r = c.give(mx);
            c.check(P::S5, r.outcome == Outcome::Ok, "give without a matching take");
        };
    };
    for (const UnitId self : {med, high}) {
        ProgramBuilder b(self);
        const auto me = static_cast<std::uint8_t>(raw(self));
        const Label take = b.declare("take");
        b.define_call(
            take, [=](Ctx& c) { return c.take(mx, kForever); },
            [=](Ctx& c, IpcResult r) {
                c.check(P::S1, r.outcome == Outcome::Ok, "take returned without the mutex");
                c.go(Label{static_cast<std::uint8_t>(take.idx + 2)});
            });
        b.node("enter", enter(me));
        const Label l = b.node("leave", leave(me));
        b.progress(l);
        b.node("suspend", [=](Ctx& c) { c.suspend_self(); c.go(take); }, true);
        a.set_program(self, b.build());
    }
    {
        ProgramBuilder b(low);
        const auto me = static_cast<std::uint8_t>(raw(low));
        const Label take = b.declare("take");
        b.define_call(
            take, [=](Ctx& c) { return c.take(mx, kForever); },
            [=](Ctx& c, IpcResult r) {
                c.check(P::S1, r.outcome == Outcome::Ok, "take returned without the mutex");
                c.go(Label{static_cast<std::uint8_t>(take.idx + 2)});
            });
        b.node("enter", enter(me));
        b.node("resume_medium", [=](Ctx& c) { c.resume(med); });
        if (coop) b.node("yield_medium", [](Ctx& c) { c.yield(); }, true);
        b.node("resume_high", [=](Ctx& c) { c.resume(high); });
        if (coop) b.node("yield_high", [](Ctx& c) { c.yield(); }, true);
        b.node("inherited", [=](Ctx& c) {
            c.check(P::S6, c.task().effective_priority == c.layout.base_priority[raw(high)],
                    "holder did not inherit the waiter's priority");
        });
        b.node("leave", leave(me));
        const Label restored = b.node("restored", [=](Ctx& c) {
            c.check(P::S6, c.task().effective_priority == c.layout.base_priority[raw(low)],
                    "priority not restored after release");
            if (!coop) c.go(take);
        });
        b.progress(restored);
        coop_yield(b, coop, "yield", take);
        a.set_program(low, b.build());
    }
    return a.finish({P::S1, P::S4, P::S5, P::S6}, true);
}

// A task sending to and receiving from its own queue without blocking, and a
// mutex holder that resumes a high-priority task blocking on the same mutex.
App build_genqtest(const AppOptions& o) {
    AppAssembler a("GenQTest", o);
    const int m = o.param("modulus", 4);
    const auto d_take = ticks(o.param("take_timeout", 3));
    const bool coop = a.cooperative();
    const UnitId idle = a.add_task("idle", 0);
    const UnitId fb = a.add_task("queue_task", 0);
    const UnitId low = a.add_task("mutex_low", 0);
    const UnitId high = a.add_task("mutex_high", 2);
    const auto q = a.add_queue("q", 1);
    const auto mx = a.add_lock("mutex", 1, 1, true);
    const auto seq = a.add_var("seq");
    const auto inside = a.add_var("inside");
    a.set_program(idle, a.idle_program());
    a.start_suspended(high);
    {
        ProgramBuilder b(fb);
        b.node("send", [=](Ctx& c) {
            const auto r = c.send(q, c.var(seq), 0);
            c.check(P::S2, r.outcome == Outcome::Ok, "own queue unexpectedly full");
        });
        const Label recv = b.node("recv", [=](Ctx& c) {
            const auto r = c.receive(q, 0);
            c.check(P::S2, r.outcome == Outcome::Ok, "own queue unexpectedly empty");
            c.check(P::S3, r.outcome != Outcome::Ok || r.value == c.var(seq), "wrong item at the queue head");
            c.var(seq) = inc(c.var(seq), m);
            if (!coop) c.go(Label{0});
        });
        b.progress(recv);
        coop_yield(b, coop, "yield", Label{0});
        a.set_program(fb, b.build());
    }
    {
        ProgramBuilder b(low);
        const auto me = static_cast<std::uint8_t>(raw(low));
        b.node("take", [=](Ctx& c) {
            const auto r = c.take(mx, 0);
            c.check(P::S2, r.outcome == Outcome::Ok, "mutex not free");
        });
        b.node("enter", [=](Ctx& c) {
            c.check(P::S4, c.var(inside) == 0, "two tasks inside the mutex section");
            c.var(inside) = me;
        });
        b.node("resume_high", [=](Ctx& c) { c.resume(high); });
        if (coop) b.node("yield_high", [](Ctx& c) { c.yield(); }, true);
        b.node("inherited", [=](Ctx& c) {
            c.check(P::S6, c.task().effective_priority == c.layout.base_priority[raw(high)],
                    "holder did not inherit the waiter's priority");
        });
        b.node("leave", [=](Ctx& c) {
            c.check(P::S4, c.var(inside) == me, "mutex section entered by another task");
            c.var(inside) = 0;
            c.give(mx);
        });
        const Label restored = b.node("restored", [=](Ctx& c) {
            c.check(P::S6, c.task().effective_priority == c.layout.base_priority[raw(low)],
                    "priority not restored after release");
            if (!coop) c.go(Label{0});
        });
        b.progress(restored);
        coop_yield(b, coop, "yield", Label{0});
        a.set_program(low, b.build());
    }
    {
        ProgramBuilder b(high);
        const auto me = static_cast<std::uint8_t>(raw(high));
        const Label take = b.declare("take");
        b.define_call(
            take, [=](Ctx& c) { return c.take(mx, d_take); },
            [=](Ctx& c, IpcResult r) {
                c.check(P::S1, r.outcome == Outcome::Ok, "mutex not released in time");
                c.go(Label{static_cast<std::uint8_t>(take.idx + 2)});
            });
        b.node("enter", [=](Ctx& c) {
            c.check(P::S4, c.var(inside) == 0, "two tasks inside the mutex section");
            c.var(inside) = me;
        });
        const Label l = b.node("leave", [=](Ctx& c) {
            c.check(P::S4, c.var(inside) == me, "mutex section entered by another task");
            c.var(inside) = 0;
            c.give(mx);
        });
        b.progress(l);
        b.node("suspend", [=](Ctx& c) { c.suspend_self(); c.go(take); }, true);
        a.set_program(high, b.build());
    }
    return a.finish({P::S1, P::S2, P::S3, P::S4, P::S6}, true);
}

struct Entry {
    const char* name;
    App (*build)(const AppOptions&);
    std::map<std::string, int> defaults;
    std::set<PropertyKind> properties;
};

const std::vector<Entry>& registry() {
    static const std::vector<Entry> r = {
        {"PollQ", build_pollq, {{"modulus", 4}, {"capacity", 2}, {"producer_delay", 2}, {"consumer_delay", 2}},
         {P::S0, P::S2, P::S3}},
        {"Semtest", build_semtest, {{"take_timeout", 5}, {"rest_delay", 5}}, {P::S0, P::S1, P::S2, P::S4}},
        {"BlockQ", build_blockq,
         {{"modulus", 4}, {"send_timeout", 16}, {"receive_timeout", -1}, {"pair3_timeout", -1}, {"max_delay", 16}},
         {P::S1, P::S2, P::S3}},
        {"QPeek", build_qpeek, {{"modulus", 4}}, {P::S1, P::S2, P::S3}},
        {"Dynamic", build_dynamic, {{"modulus", 4}, {"control_delay", 4}, {"check_period", 5}},
         {P::S0, P::S2, P::S3, P::S4}},
        {"Countsem", build_countsem, {{"max_count", 2}, {"fix_delay_ticks", 3}}, {P::S2, P::S5}},
        {"Recmutex", build_recmutex, {}, {P::S1, P::S4, P::S5, P::S6}},
        {"GenQTest", build_genqtest, {{"modulus", 4}, {"take_timeout", 3}}, {P::S1, P::S2, P::S3, P::S4, P::S6}},
    };
    return r;
}

const Entry& lookup(const std::string& name) {
    for (const auto& e : registry()) {
        if (lower(e.name) == lower(name)) return e;
    }
    throw ModelError(ModelError::Kind::UnknownApp, "unknown app: " + name);
}

}  // namespace

const std::vector<std::string>& app_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& e : registry()) v.emplace_back(e.name);
        return v;
    }();
    return names;
}

std::map<std::string, int> default_params(const std::string& name) { return lookup(name).defaults; }

std::set<PropertyKind> table_properties(const std::string& name) { return lookup(name).properties; }

App build_app(const std::string& name, const AppOptions& options) {
    const Entry& e = lookup(name);
    AppOptions full = options;
    for (const auto& [k, v] : options.params) {
        if (!e.defaults.count(k)) throw ModelError(ModelError::Kind::BadConfig, "unknown parameter for " + std::string(e.name) + ": " + k);
    }
    for (const auto& [k, v] : e.defaults) full.params.emplace(k, v);
    return e.build(full);
}

}  // namespace rtosmc
