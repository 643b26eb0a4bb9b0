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
#include <vector>

#include "maxentgame/mdp.hpp"
#include "maxentgame/tables.hpp"

namespace maxentgame {

/// An MDP plus a belief p(tau) over the hidden target trajectory.
class MetaPomdp {
public:
    /// Target must be normalised within 1e-10 and supported on feasible trajectories.
    MetaPomdp(FiniteMdp mdp, TrajectoryDist target);

    static MetaPomdp bandit(std::span<const double> p);

    const FiniteMdp& mdp() const { return mdp_; }
    const TrajectoryDist& target() const { return target_; }

private:
    FiniteMdp mdp_;
    TrajectoryDist target_;
};

/// Expected number of episodes until the target is produced: sum_tau p(tau) / pi(tau).
/// Returns kInf when pi misses some tau with p(tau) > 0.
double regret(const MetaPomdp& meta, const TrajectoryDist& policy_dist);
double regret(std::span<const double> p, std::span<const double> pi);

/// pi(tau) = sqrt(p(tau)) / sum sqrt(p).
TrajectoryDist optimal_target_policy(const MetaPomdp& meta);
std::vector<double> optimal_target_policy(std::span<const double> p);

/// (sum_tau sqrt(p(tau)))^2, the minimum regret.
double optimal_regret(const MetaPomdp& meta);
double optimal_regret(std::span<const double> p);

/// Reward whose MaxEnt optimum is the regret-minimising sqrt(p) policy.
/// Bandits get r(a) = 1/2 log p(a). Otherwise the sqrt(p) trajectory
/// distribution is decomposed into per-step log-conditionals, which equals
/// 1/2 log p(tau) up to a constant under deterministic dynamics.
/// Throws NotMarkovian when no Markov policy realises sqrt(p).
RewardTable maxent_reward_for_meta(const MetaPomdp& meta);

/// Conjugate Gaussian belief over arm means: prior N(0,1), unit observation noise.
class BeliefState {
public:
    explicit BeliefState(std::size_t n_arms) : counts_(n_arms, 0), sums_(n_arms, 0.0) {}

    void observe(std::size_t arm, double value) {
        ++counts_[arm];
        sums_[arm] += value;
    }
    double mean(std::size_t arm) const { return sums_[arm] / static_cast<double>(counts_[arm] + 1); }
    double variance(std::size_t arm) const { return 1.0 / static_cast<double>(counts_[arm] + 1); }
    std::size_t count(std::size_t arm) const { return counts_[arm]; }
    std::size_t n_arms() const { return counts_.size(); }
    std::vector<double> means() const;

private:
    std::vector<std::size_t> counts_;
    std::vector<double> sums_;
};

struct RegretRow {
    std::size_t problem_id = 0;
    std::uint64_t seed = 0;
    std::size_t pull = 0;
    double normalized_regret = 0.0;
};

struct MetaExperimentConfig {
    std::size_t n_arms = 5;
    std::size_t n_problems = 10;
    std::size_t n_pulls = 20000;
    std::uint64_t seed = 0;
    /// pi(i) ∝ exp(posterior mean / temperature).
    double temperature = 1.0;
    std::size_t threads = 1;
};

struct RegretCurve {
    /// Ordered by (problem_id, pull).
    std::vector<RegretRow> rows;
    /// p drawn for each problem.
    std::vector<std::vector<double>> beliefs;
    /// Final policy of each problem.
    std::vector<std::vector<double>> final_policies;
};

/// The bandit meta-POMDP experiment. For each problem: p ~ Dirichlet(1),
/// true reward r(i) = 1/2 log p(i); at every pull the agent acts with
/// pi ∝ exp(posterior mean), observes N(r(i), 1) and updates its belief.
/// Row `pull` = k logs regret(p, pi_k)/(sum sqrt p)^2 for the policy used on
/// pull k (pull 0 is the uninformed uniform policy).
RegretCurve run_bandit_meta_experiment(const MetaExperimentConfig& config);

/// Ingredients of the log-regret bound:
///   lhs = log sum p^2/pi,  rhs = KL(p||pi) + (b-a)(1/a-1/b)/4,
/// with ratios p/pi in [a, b] over the support of p. The normalised form
/// uses Z = sum p^2: log Regret_{p^2/Z}(pi) = lhs - log Z <= rhs - log Z.
struct RegretBound {
    double lhs = 0.0;
    double rhs = 0.0;
    double forward_kl = 0.0;
    double jensen_gap_bound = 0.0;
    double ratio_min = 1.0;
    double ratio_max = 1.0;
    double log_z = 0.0;
    double normalized_lhs = 0.0;
    double normalized_rhs = 0.0;

    bool holds(double tol = 1e-9) const { return lhs <= rhs + tol; }
};

/// Throws UnboundedRatio if pi is zero where p is not.
RegretBound regret_bound_check(std::span<const double> p, std::span<const double> pi);
RegretBound regret_bound_check(const TrajectoryDist& p, const TrajectoryDist& pi);

} // namespace maxentgame
