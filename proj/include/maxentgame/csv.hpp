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

#include <ostream>
#include <span>
#include <string>

#include "maxentgame/fictitious.hpp"
#include "maxentgame/lowerbound.hpp"
#include "maxentgame/metapomdp.hpp"
#include "maxentgame/robustgame.hpp"

namespace maxentgame {

/// Decimal with 12 significant digits ("%.12g"); infinities print as inf / -inf.
std::string format_number(double value);

// Each writer emits its header line followed by one line per row.
void write_regret_csv(std::ostream& out, std::span<const RegretRow> rows);
void write_robustgame_csv(std::ostream& out, std::span<const RobustGameRow> rows);
void write_trace_csv(std::ostream& out, std::span<const TraceRow> rows);
void write_lowerbound_csv(std::ostream& out, std::span<const LowerBoundRow> rows);

} // namespace maxentgame
