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

#include <span>
#include <vector>

#include "maxentgame/mdp.hpp"
#include "maxentgame/tables.hpp"

namespace maxentgame {

/// Exact optimum of E_pi[sum_t r_t] + alpha * H_pi[a|s].
struct SoftSolution {
    TabularPolicy policy;
    /// V_t(s) flattened [t][s], t = 0..T-1.
    std::vector<double> soft_values;
    /// Soft action values Q_t(s,a) flattened [t][s][a].
    std::vector<double> soft_q;
    double objective = 0.0;

    double soft_value(std::size_t t, std::size_t s) const { return soft_values[t * policy.n_states() + s]; }
};

/// Finite-horizon soft value iteration:
///   Q_t(s,a) = r_t(s,a) + sum_s' p(s'|s,a) V_{t+1}(s'),  V_T = 0,
///   V_t(s)   = alpha * log sum_a exp(Q_t(s,a) / alpha),
///   pi_t(a|s) = exp((Q_t(s,a) - V_t(s)) / alpha).
/// Rows whose actions are all -inf get a uniform policy and V = -inf; if
/// such a value leaks back to a state with initial mass the objective itself
/// is -inf and DegenerateTarget is thrown.
SoftSolution soft_value_iteration(const FiniteMdp& mdp, const RewardTable& reward, double temperature = 1.0);

double expected_return(const FiniteMdp& mdp, const TabularPolicy& policy, const RewardTable& reward);

/// E[sum_t H(pi_t(.|s_t))].
double expected_entropy(const FiniteMdp& mdp, const TabularPolicy& policy);

/// E_pi[sum r] + alpha * E[sum H], by forward recursion.
double maxent_objective(const FiniteMdp& mdp, const TabularPolicy& policy, const RewardTable& reward,
                        double temperature = 1.0);

/// |J(pi, r) - (log Z - KL(pi(tau) || p_r(tau)))| at unit temperature, by enumeration.
/// Both sides -inf (pi visits a -inf reward) counts as a zero gap.
double kl_identity_gap(const FiniteMdp& mdp, const TabularPolicy& policy, const RewardTable& reward,
                       std::size_t cap = kDefaultEnumerationCap);

/// Moments of the return R = sum_t r_t under pi, by enumeration. `log_mgf` is
/// the cumulant generating function at 1, log E[e^R]; its second-order
/// expansion is mean + variance / 2.
struct RiskDiagnostics {
    double log_mgf = 0.0;
    double mean = 0.0;
    double variance = 0.0;

    double second_order() const { return mean + 0.5 * variance; }
};

RiskDiagnostics risk_seeking_diagnostics(const FiniteMdp& mdp, const TabularPolicy& policy,
                                         const RewardTable& reward, std::size_t cap = kDefaultEnumerationCap);

/// Markov policy from the target's conditionals pi_t(a|s) = P(s_t=s, a_t=a) / P(s_t=s);
/// rows without mass are uniform.
TabularPolicy markov_policy_from_distribution(const FiniteMdp& mdp, const TrajectoryDist& target);

/// State-action reward with sum_t r_t(s_t,a_t) = log(target(tau) / dynamics(tau)) on every
/// feasible trajectory: r_t(s,a) = log pi_t(a|s) for the target's Markov conditionals.
/// Throws NotMarkovian if that policy does not reproduce the target within `tol`.
RewardTable decompose_trajectory_reward(const FiniteMdp& mdp, const TrajectoryDist& target, double tol = 1e-9,
                                        std::size_t cap = kDefaultEnumerationCap);

/// Zero before the last step, 1/2 log p_tilde(s,a) on it. `p_tilde` is flattened [s][a].
RewardTable goal_reaching_reward(const FiniteMdp& mdp, std::span<const double> p_tilde);

/// True iff every listed (s,a) can be made the final state-action pair with
/// probability one by some deterministic (time-dependent) policy.
bool verify_deterministic_reachability(const FiniteMdp& mdp, std::span<const StateAction> support);

} // namespace maxentgame
