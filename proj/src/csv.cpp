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

#include "maxentgame/csv.hpp"

#include <cmath>
#include <cstdio>

namespace maxentgame {

std::string format_number(double value) {
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (std::isnan(value)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

void write_regret_csv(std::ostream& out, std::span<const RegretRow> rows) {
    out << "problem_id,seed,pull,normalized_regret\n";
    for (const auto& r : rows)
        out << r.problem_id << ',' << r.seed << ',' << r.pull << ',' << format_number(r.normalized_regret) << '\n';
}

void write_robustgame_csv(std::ostream& out, std::span<const RobustGameRow> rows) {
    out << "problem_id,seed,agent,round,normalized_worst_case\n";
    for (const auto& r : rows)
        out << r.problem_id << ',' << r.seed << ',' << to_string(r.agent) << ',' << r.round << ','
            << format_number(r.normalized_worst_case) << '\n';
}

void write_trace_csv(std::ostream& out, std::span<const TraceRow> rows) {
    out << "kind,q_or_p1,value_1,value_2\n";
    for (const auto& r : rows)
        out << to_string(r.kind) << ',' << format_number(r.x) << ',' << format_number(r.value_1) << ','
            << format_number(r.value_2) << '\n';
}

void write_lowerbound_csv(std::ostream& out, std::span<const LowerBoundRow> rows) {
    out << "problem_id,method,normalized_minimax,status\n";
    for (const auto& r : rows)
        out << r.problem_id << ',' << to_string(r.method) << ',' << format_number(r.normalized_minimax) << ','
            << (r.converged ? "ok" : "nonconverged") << '\n';
}

} // namespace maxentgame
