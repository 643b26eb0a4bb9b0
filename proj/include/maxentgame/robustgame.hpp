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

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "maxentgame/mdp.hpp"
#include "maxentgame/tables.hpp"

namespace maxentgame {

enum class RobustVariant {
    /// {r - alpha log q : q a policy}
    exact,
    /// exact set plus everything pointwise above it: u >= 0, sum_a e^{-u/alpha} <= 1
    dominated,
    /// an explicit list of reward tables
    finite,
};

std::string_view to_string(RobustVariant variant);

/// A set of reward functions the adversary may choose from.
class RobustSetSpec {
public:
    static RobustSetSpec exact(RewardTable base, double temperature = 1.0);
    static RobustSetSpec dominated(RewardTable base, double temperature = 1.0);
    static RobustSetSpec finite(std::vector<RewardTable> members);

    RobustVariant variant() const { return variant_; }
    /// Base reward (the first member for the finite variant).
    const RewardTable& base() const { return base_; }
    double temperature() const { return temperature_; }
    const std::vector<RewardTable>& members() const { return members_; }

private:
    RobustSetSpec(RewardTable base, double temperature, RobustVariant variant, std::vector<RewardTable> members);

    RewardTable base_;
    double temperature_;
    RobustVariant variant_;
    std::vector<RewardTable> members_;
};

/// The adversary's conditional distribution q_t(a|s).
struct AdversaryChoice {
    TabularPolicy q;
};

/// r'(s,a) = r(s,a) - alpha log q(a|s). Throws ZeroAdversaryMass if q has a zero entry.
RewardTable adversarial_reward(const RewardTable& base, const AdversaryChoice& q, double alpha = 1.0);

struct WorstCase {
    double value = 0.0;
    /// Minimising adversary for the exact/dominated variants (q = pi).
    std::optional<AdversaryChoice> witness;
    /// Minimising member for the finite variant (lowest index on ties).
    std::optional<std::size_t> member_index;
    /// Value is -inf: the policy puts mass on a -inf base reward.
    bool exploitable = false;
};

/// min over the set of E_pi[sum r']. For exact/dominated sets this is the
/// closed form E_pi[sum r] + alpha H_pi[a|s], attained at q = pi (Gibbs'
/// inequality). A zero-probability action only removes its entropy term.
WorstCase worst_case_value(const FiniteMdp& mdp, const TabularPolicy& policy, const RobustSetSpec& spec);

/// Whether `candidate` belongs to the set, with u = candidate - base:
///   exact:     u >= -tol and |sum_a e^{-u/alpha} - 1| <= tol at every (t,s)
///   dominated: u >= -tol and sum_a e^{-u/alpha} <= 1 + tol
///   finite:    candidate equals some member within tol
bool membership(const RobustSetSpec& spec, const RewardTable& candidate, double tol = 1e-9);

enum class TraceKind { set_trace, envelope, objective };
std::string_view to_string(TraceKind kind);

/// One CSV row of a two-arm trace.
///   set_trace: x = q,  value_1/value_2 = transformed r'_1, r'_2
///   envelope:  x = p1, value_1 = min over traced rewards of E_p[r'], value_2 = minimising q
///   objective: x = p1, value_1 = transformed MaxEnt objective, value_2 = E_p[r]
struct TraceRow {
    TraceKind kind = TraceKind::set_trace;
    double x = 0.0;
    double value_1 = 0.0;
    double value_2 = 0.0;
};

/// n points on [eps, 1 - eps], endpoints included.
std::vector<double> open_grid(std::size_t n, double eps = 1e-6);

/// Traces the robust set of a two-arm bandit reward for q on the open grid,
/// plus the worst-case envelope and MaxEnt objective over the same policy
/// grid. `scale`/`shift` apply b * r' + c to the set (and hence to both curves).
std::vector<TraceRow> trace_robust_set_2arm(const RewardTable& base, double alpha, std::size_t n_grid,
                                            double scale = 1.0, double shift = 0.0);

/// All points of the simplex in n dimensions with coordinates in multiples of 1/divisions.
std::vector<std::vector<double>> simplex_grid(std::size_t n, std::size_t divisions);

/// Indices of the grid policies maximising min_i E_pi[sum r_i], within tie_tol.
std::vector<std::size_t> robust_argmax(const FiniteMdp& mdp, std::span<const RewardTable> members,
                                       std::span<const TabularPolicy> grid, double tie_tol = 1e-9);

/// The maximisers over the grid of min_i E_pi[r_i] and of min_i E_pi[b r_i + c]
/// coincide. Only the argmax is invariant; the values move to b v + c T.
bool affine_argmax_invariance(const FiniteMdp& mdp, const RobustSetSpec& spec_finite, double scale, double shift,
                              std::span<const TabularPolicy> grid, double tie_tol = 1e-9);

} // namespace maxentgame
