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

#include "maxentgame/tables.hpp"

#include <cmath>
#include <string>

#include "maxentgame/error.hpp"
#include "maxentgame/mdp.hpp"
#include "maxentgame/numeric.hpp"

namespace maxentgame {

namespace {

constexpr double kRowTol = 1e-12;

void check_table_size(const TableShape& shape, std::size_t size, const char* what) {
    require(shape.horizon >= 1 && shape.n_states >= 1 && shape.n_actions >= 1,
            ErrorKind::InvalidArgument, std::string(what) + ": dimensions must be positive");
    require(size == shape.size(), ErrorKind::ShapeMismatch,
            std::string(what) + ": expected " + std::to_string(shape.size()) + " entries, got " +
                std::to_string(size));
}

} // namespace

TableShape shape_of(const FiniteMdp& mdp) { return {mdp.horizon(), mdp.n_states(), mdp.n_actions()}; }

TabularPolicy::TabularPolicy(TableShape shape, std::vector<double> probs)
    : shape_(shape), probs_(std::move(probs)) {
    check_table_size(shape_, probs_.size(), "TabularPolicy");
    for (std::size_t t = 0; t < shape_.horizon; ++t) {
        for (std::size_t s = 0; s < shape_.n_states; ++s) {
            double total = 0.0;
            for (double p : row(t, s)) {
                require(std::isfinite(p) && p >= 0.0, ErrorKind::InvalidArgument,
                        "TabularPolicy: probabilities must be finite and non-negative");
                total += p;
            }
            require(std::abs(total - 1.0) <= kRowTol, ErrorKind::InvalidArgument,
                    "TabularPolicy: row (t=" + std::to_string(t) + ", s=" + std::to_string(s) +
                        ") sums to " + std::to_string(total));
        }
    }
}

TabularPolicy TabularPolicy::uniform(TableShape shape) {
    return TabularPolicy(shape, std::vector<double>(shape.size(), 1.0 / static_cast<double>(shape.n_actions)));
}

TabularPolicy TabularPolicy::uniform(const FiniteMdp& mdp) { return uniform(shape_of(mdp)); }

TabularPolicy TabularPolicy::stationary(const FiniteMdp& mdp, std::span<const double> rows) {
    TableShape shape = shape_of(mdp);
    require(rows.size() == shape.n_states * shape.n_actions, ErrorKind::ShapeMismatch,
            "TabularPolicy::stationary: rows must be [n_states][n_actions]");
    std::vector<double> probs;
    probs.reserve(shape.size());
    for (std::size_t t = 0; t < shape.horizon; ++t) probs.insert(probs.end(), rows.begin(), rows.end());
    return TabularPolicy(shape, std::move(probs));
}

TabularPolicy TabularPolicy::bandit(std::span<const double> probs) {
    return TabularPolicy({1, 1, probs.size()}, std::vector<double>(probs.begin(), probs.end()));
}

bool TabularPolicy::has_zero_entry() const {
    for (double p : probs_)
        if (p == 0.0) return true;
    return false;
}

RewardTable::RewardTable(TableShape shape, std::vector<double> values)
    : shape_(shape), values_(std::move(values)) {
    check_table_size(shape_, values_.size(), "RewardTable");
    for (double v : values_)
        require(!std::isnan(v) && v != std::numeric_limits<double>::infinity(), ErrorKind::InvalidArgument,
                "RewardTable: entries must be finite or -inf");
}

RewardTable RewardTable::zeros(TableShape shape) { return constant(shape, 0.0); }

RewardTable RewardTable::zeros(const FiniteMdp& mdp) { return zeros(shape_of(mdp)); }

RewardTable RewardTable::constant(TableShape shape, double value) {
    return RewardTable(shape, std::vector<double>(shape.size(), value));
}

RewardTable RewardTable::stationary(const FiniteMdp& mdp, std::span<const double> values) {
    TableShape shape = shape_of(mdp);
    require(values.size() == shape.n_states * shape.n_actions, ErrorKind::ShapeMismatch,
            "RewardTable::stationary: values must be [n_states][n_actions]");
    std::vector<double> out;
    out.reserve(shape.size());
    for (std::size_t t = 0; t < shape.horizon; ++t) out.insert(out.end(), values.begin(), values.end());
    return RewardTable(shape, std::move(out));
}

RewardTable RewardTable::bandit(std::span<const double> values) {
    return RewardTable({1, 1, values.size()}, std::vector<double>(values.begin(), values.end()));
}

RewardTable RewardTable::affine(double scale, double shift) const {
    require(scale > 0.0, ErrorKind::InvalidArgument, "RewardTable::affine: scale must be positive");
    std::vector<double> out(values_);
    for (double& v : out)
        if (v != kNegInf) v = scale * v + shift;
    return RewardTable(shape_, std::move(out));
}

} // namespace maxentgame
