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

#pragma once

#include "rtosmc/kernel.hpp"

#include <initializer_list>
#include <vector>

namespace rtosmc::test {

/// Tasks with the given base priorities (task 0 is idle), then PendSV and
/// SysTick at priority 15, then any extra lines.
inline SystemLayout make_layout(std::vector<std::uint8_t> prios, PolicyKind policy = PolicyKind::PreemptiveSlice,
                                std::initializer_list<std::uint8_t> extra_lines = {}) {
    SystemLayout L;
    L.base_priority = std::move(prios);
    for (std::size_t t = 0; t < L.base_priority.size(); ++t) L.unit_names.push_back(t == 0 ? "idle" : "T" + std::to_string(t));
    const auto n = L.base_priority.size();
    L.lines.push_back({"PendSV", unit(n), 15});
    L.lines.push_back({"SysTick", unit(n + 1), 15});
    L.unit_names.push_back("PendSV");
    L.unit_names.push_back("SysTick");
    std::size_t k = 0;
    for (const auto p : extra_lines) {
        L.lines.push_back({"IRQ" + std::to_string(k), unit(n + 2 + k), p});
        L.unit_names.push_back("IRQ" + std::to_string(k));
        ++k;
    }
    L.kernel.policy.kind = policy;
    L.validate();
    return L;
}

inline constexpr std::size_t kPendSV = 0;
inline constexpr std::size_t kSysTick = 1;

}  // namespace rtosmc::test
