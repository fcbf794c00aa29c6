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

// Small hand-built systems for checking the engine against the oracle.

#include "rtosmc/apps.hpp"

#include <string>
#include <vector>

namespace rtosmc {

struct ToyInfo {
    std::string name;
    std::string summary;
};

const std::vector<ToyInfo>& toy_catalog();

/// Throws ModelError(UnknownApp) for names outside toy_catalog().
App build_toy(const std::string& name);

}  // namespace rtosmc
