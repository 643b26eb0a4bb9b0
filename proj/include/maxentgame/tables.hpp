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

#include <cstddef>
#include <span>
#include <vector>

namespace maxentgame {

class FiniteMdp;

/// Dimensions shared by every time-indexed [t][s][a] table.
struct TableShape {
    std::size_t horizon = 0;
    std::size_t n_states = 0;
    std::size_t n_actions = 0;

    std::size_t size() const { return horizon * n_states * n_actions; }
    std::size_t index(std::size_t t, std::size_t s, std::size_t a) const {
        return (t * n_states + s) * n_actions + a;
    }
    bool operator==(const TableShape&) const = default;
};

TableShape shape_of(const FiniteMdp& mdp);

/// Non-stationary policy pi_t(a|s). Rows sum to one within 1e-12.
class TabularPolicy {
public:
    TabularPolicy(TableShape shape, std::vector<double> probs);

    static TabularPolicy uniform(TableShape shape);
    static TabularPolicy uniform(const FiniteMdp& mdp);
    /// Same action distribution at every step; rows indexed [s][a].
    static TabularPolicy stationary(const FiniteMdp& mdp, std::span<const double> rows);
    /// One-state, one-step policy.
    static TabularPolicy bandit(std::span<const double> probs);
    static TabularPolicy bandit(std::initializer_list<double> probs) {
        return bandit(std::span<const double>(probs.begin(), probs.size()));
    }

    const TableShape& shape() const { return shape_; }
    std::size_t horizon() const { return shape_.horizon; }
    std::size_t n_states() const { return shape_.n_states; }
    std::size_t n_actions() const { return shape_.n_actions; }

    double operator()(std::size_t t, std::size_t s, std::size_t a) const {
        return probs_[shape_.index(t, s, a)];
    }
    std::span<const double> row(std::size_t t, std::size_t s) const {
        return {probs_.data() + shape_.index(t, s, 0), shape_.n_actions};
    }
    std::span<const double> values() const { return probs_; }

    /// True if any entry is exactly zero.
    bool has_zero_entry() const;

private:
    TableShape shape_;
    std::vector<double> probs_;
};

/// Time-indexed reward r_t(s,a). Entries may be kNegInf; +inf and NaN are rejected.
class RewardTable {
public:
    RewardTable(TableShape shape, std::vector<double> values);

    static RewardTable zeros(TableShape shape);
    static RewardTable zeros(const FiniteMdp& mdp);
    static RewardTable constant(TableShape shape, double value);
    /// Same reward at every step; values indexed [s][a].
    static RewardTable stationary(const FiniteMdp& mdp, std::span<const double> values);
    static RewardTable bandit(std::span<const double> values);
    static RewardTable bandit(std::initializer_list<double> values) {
        return bandit(std::span<const double>(values.begin(), values.size()));
    }

    const TableShape& shape() const { return shape_; }
    std::size_t horizon() const { return shape_.horizon; }
    std::size_t n_states() const { return shape_.n_states; }
    std::size_t n_actions() const { return shape_.n_actions; }

    double operator()(std::size_t t, std::size_t s, std::size_t a) const {
        return values_[shape_.index(t, s, a)];
    }
    std::span<const double> row(std::size_t t, std::size_t s) const {
        return {values_.data() + shape_.index(t, s, 0), shape_.n_actions};
    }
    std::span<const double> values() const { return values_; }

    /// b * r + c entrywise (kNegInf stays kNegInf for b > 0).
    RewardTable affine(double scale, double shift) const;

private:
    TableShape shape_;
    std::vector<double> values_;
};

} // namespace maxentgame
