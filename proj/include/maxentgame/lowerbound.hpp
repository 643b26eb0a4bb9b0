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
#include <span>
#include <string_view>
#include <vector>

#include "maxentgame/mdp.hpp"
#include "maxentgame/tables.hpp"

namespace maxentgame {

/// r0 = min_i r_i - alpha log n. Every member lies in the dominated robust
/// set of r0, with sum_a e^{(r0 - r_i)/alpha} <= 1 at every (t, s).
RewardTable feasible_init(std::span<const RewardTable> members, double alpha = 1.0);

/// log sum_a exp((r(t,s,a) - member(t,s,a)) / alpha); <= 0 iff the member is
/// in the dominated robust set of r at (t, s).
double constraint_value(const RewardTable& reward, const RewardTable& member, std::size_t t, std::size_t s,
                        double alpha = 1.0);

/// Largest constraint value over all members and all (t, s).
double max_constraint_violation(const RewardTable& reward, std::span<const RewardTable> members,
                                double alpha = 1.0);

/// Log-barrier schedule: weight mu0 * decay^k for stages k = 0..stages-1,
/// each stage solved by damped Newton.
struct SubproblemOptions {
    double mu0 = 1.0;
    double mu_decay = 0.2;
    std::size_t stages = 8;
    std::size_t max_newton = 200;
    /// Stop a stage once the Newton decrement squared drops below this.
    double newton_tol = 1e-14;
};

/// For every (t, s) independently: maximise sum_a pi(a|s) r(a) subject to
/// log sum_a e^{(r(a) - r_i(a))/alpha} <= 0 for all members i. The iterate stays
/// strictly feasible throughout. `warm_start`, if given, must be strictly
/// feasible; otherwise the solver starts from feasible_init shifted by -alpha.
/// Throws NonConvergence if a Newton stage hits max_newton.
RewardTable solve_reward_subproblem(const TabularPolicy& policy, std::span<const RewardTable> members,
                                    double alpha = 1.0, const SubproblemOptions& options = {},
                                    const RewardTable* warm_start = nullptr);

struct LowerBoundOptions {
    double alpha = 1.0;
    double outer_tol = 1e-8;
    std::size_t max_outer = 500;
    SubproblemOptions subproblem;
};

struct LowerBoundResult {
    RewardTable reward;
    TabularPolicy policy;
    /// MaxEnt objective J(policy, reward), a lower bound on min_i E_policy[sum r_i].
    double objective = 0.0;
    double max_violation = 0.0;
    /// max_violation <= 1e-8.
    bool certified_feasible = false;
    /// |dJ| < outer_tol was reached before max_outer.
    bool converged = false;
    std::size_t outer_iterations = 0;
    /// J after each reward step.
    std::vector<double> history;
};

/// Alternates pi <- MaxEnt optimum of r (soft value iteration) and
/// r <- solve_reward_subproblem(pi), starting from feasible_init. Returns the
/// last pair; `converged` is false if max_outer was reached first.
LowerBoundResult lowerbound_maxent(const FiniteMdp& mdp, std::span<const RewardTable> members,
                                   const LowerBoundOptions& options = {});

/// Optimal deterministic policy for the pointwise minimum reward min_i r_i
/// (lowest action index on ties).
TabularPolicy pointwise_min_baseline(const FiniteMdp& mdp, std::span<const RewardTable> members);

TabularPolicy uniform_baseline(std::size_t n_arms);

/// min_i E_pi[sum r_i].
double minimax_value(const FiniteMdp& mdp, const TabularPolicy& policy, std::span<const RewardTable> members);

enum class LowerBoundMethod { lbme, pointwise_min, uniform, optimal };
std::string_view to_string(LowerBoundMethod method);

/// How members are shifted to make the game value positive.
enum class ShiftMode {
    /// r_i - min_a r_i(a) + offset, member by member.
    per_member,
    /// r_i - min_{i,a} r_i(a) + offset for all members alike.
    global,
};

struct LowerBoundSuiteConfig {
    std::size_t n_problems = 10;
    std::size_t n_arms = 5;
    std::size_t n_members = 5;
    std::uint64_t seed = 0;
    ShiftMode shift_mode = ShiftMode::per_member;
    double shift_offset = 0.0;
    /// Duality-gap tolerance of the reference game solve.
    double game_epsilon = 1e-9;
    LowerBoundOptions options;
    std::size_t threads = 1;
};

struct LowerBoundRow {
    std::size_t problem_id = 0;
    LowerBoundMethod method = LowerBoundMethod::lbme;
    /// min_i E_pi[r_i] divided by the certified game value upper bound.
    double normalized_minimax = 0.0;
    /// False for an lbme run that hit max_outer.
    bool converged = true;
};

struct LowerBoundSuiteResult {
    /// Ordered by (problem_id, method).
    std::vector<LowerBoundRow> rows;
    /// Payoffs per problem, indexed [member][arm].
    std::vector<std::vector<std::vector<double>>> problems;
};

/// Bandit problems with N(0,1) member rewards, shifted per config, scored
/// against the matrix-game value for LowerBound+MaxEnt, both baselines and
/// the game solver's own policy.
LowerBoundSuiteResult run_lowerbound_suite(const LowerBoundSuiteConfig& config);

} // namespace maxentgame
