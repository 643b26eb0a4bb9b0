// Copyright 2026 The maxentgame Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace maxentgame {

struct PropertyResult {
    std::string name;
    bool passed = false;
    /// Worst observed discrepancy or a short failure note.
    std::string detail;
};

struct SelftestConfig {
    std::uint64_t seed = 0;
    /// Random instances per property.
    std::size_t trials = 100;
};

/// Runs the built-in property checks on seeded random instances.
std::vector<PropertyResult> run_selftest(const SelftestConfig& config);

} // namespace maxentgame
