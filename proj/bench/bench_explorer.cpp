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

// Serial reference search vs. the OpenMP parallel search on matrix cells.

#include "rtosmc/matrix.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace rtosmc;

int main(int argc, char** argv) {
    CLI::App cli{"explorer benchmark"};
    std::vector<std::string> apps{"BlockQ", "Semtest", "Dynamic"};
    std::string policy = "timeslice";
    int workers = 0;
    int repeat = 1;
    cli.add_option("--app", apps, "apps to time");
    cli.add_option("--policy", policy, "policy");
    cli.add_option("--workers", workers, "parallel workers (0 = all cores)");
    cli.add_option("--repeat", repeat, "runs per measurement (best is kept)");
    CLI11_PARSE(cli, argc, argv);

#ifdef _OPENMP
    if (workers <= 0) workers = omp_get_max_threads();
#else
    if (workers <= 0) workers = 1;
#endif
    const auto p = policy_from_string(policy);
    if (!p) {
        std::fprintf(stderr, "unknown policy %s\n", policy.c_str());
        return 3;
    }

    std::printf("%-10s %-9s %12s %10s %10s %8s %s\n", "app", "check", "states", "serial_s", "parallel_s", "speedup",
                "same");
    for (const auto& name : apps) {
        AppOptions o;
        o.policy = *p;
        const App app = build_app(name, o);
        for (const bool live : {false, true}) {
            auto best = [&](int w, Verdict& out) {
                double t = 1e300;
                for (int i = 0; i < repeat; ++i) {
                    ExploreOptions opt;
                    opt.workers = w;
                    out = live ? check_liveness(app, opt) : check_safety(app, opt);
                    t = std::min(t, out.stats.seconds);
                }
                return t;
            };
            Verdict vs, vp;
            const double ts = best(1, vs);
            const double tp = best(workers, vp);
            std::printf("%-10s %-9s %12llu %10.3f %10.3f %8.2f %s\n", name.c_str(), live ? "liveness" : "safety",
                        static_cast<unsigned long long>(std::max(vs.stats.states, vp.stats.states)), ts, tp,
                        tp > 0 ? ts / tp : 0.0, vs.kind == vp.kind ? "yes" : "NO");
        }
    }
    std::printf("workers=%d\n", workers);
    return 0;
}
