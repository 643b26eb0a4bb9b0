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

#include "maxentgame/random.hpp"
#include "maxentgame/robustgame.hpp"

namespace maxentgame {

enum class Agent { maxent, fp_noisy, fp_oracle };
std::string_view to_string(Agent agent);

/// Observation model of the fictitious-play player.
enum class FpMode {
    /// Only the pulled arm's reward is observed, with N(0,1) noise.
    noisy,
    /// One noisy sample of every arm each round.
    oracle,
};

/// Running per-arm averages; arms without observations estimate 0.
class ArmEstimator {
public:
    explicit ArmEstimator(std::size_t n_arms) : counts_(n_arms, 0), sums_(n_arms, 0.0) {}

    void observe(std::size_t arm, double value) {
        ++counts_[arm];
        sums_[arm] += value;
    }
    double estimate(std::size_t arm) const {
        return counts_[arm] == 0 ? 0.0 : sums_[arm] / static_cast<double>(counts_[arm]);
    }
    std::size_t count(std::size_t arm) const { return counts_[arm]; }
    std::size_t n_arms() const { return counts_.size(); }

private:
    std::vector<std::size_t> counts_;
    std::vector<double> sums_;
};

struct GameRow {
    std::size_t round = 0;
    double normalized_worst_case = 0.0;
    bool exploitable = false;
};

/// One agent's trajectory through a bandit robust game.
struct GameLog {
    Agent agent = Agent::maxent;
    std::size_t n_arms = 0;
    std::vector<GameRow> rows;
    /// Policy snapshot per row, flattened [round][arm].
    std::vector<double> policies;

    std::span<const double> policy(std::size_t row) const { return {policies.data() + row * n_arms, n_arms}; }
};

/// alpha * log sum_i exp(mu_i / alpha): the optimal worst case of the exact bandit robust game.
double bandit_game_value(std::span<const double> mu, double alpha);

/// Fictitious play against the exact robust set of a bandit with true means mu.
/// Each round the adversary plays q = pbar, the historical average policy
/// (seeded with the uniform policy), so arm i pays mu_i - alpha log pbar(i).
/// The player picks the arm with the highest estimated adversarial reward
/// (lowest index on ties) and then observes those rewards plus N(0,1) noise:
/// the pulled arm only in noisy mode, every arm in oracle mode. Row k logs the
/// true normalised worst case of pbar after round k.
GameLog fictitious_play_robustset(std::span<const double> mu, double alpha, std::size_t rounds, FpMode mode,
                                  Rng rng);

/// MaxEnt agent: pi(i) ∝ exp(posterior mean / alpha) under a N(0,1) prior and
/// unit-variance observations. Row k logs the policy used on round k.
GameLog maxent_bandit_agent(std::span<const double> mu, double alpha, std::size_t rounds, Rng rng);

struct MatrixGameSolution {
    /// Mixed strategy over actions.
    std::vector<double> policy;
    /// Mixed strategy over members certifying `upper`.
    std::vector<double> adversary;
    /// min_j sum_i policy_i A_ij: guaranteed by `policy`.
    double value = 0.0;
    /// max_i sum_j A_ij adversary_j: no policy can do better.
    double upper = 0.0;
    double gap = 0.0;
    std::size_t iterations = 0;
};

/// Solves max_x min_j (x^T A)_j for A indexed [action][member] by optimistic
/// multiplicative weights in self-play. The certified pair is the best of the
/// pure strategies, the running averages and the last iterates. Stops once
/// upper - value <= epsilon; the iteration cap is
/// min(ceil(8 ln(max(n, m) + 1) range^2 / epsilon^2), max_iterations).
/// Throws NonConvergence if the gap is still above epsilon at the cap.
MatrixGameSolution matrix_game_solve(const std::vector<std::vector<double>>& payoffs, double epsilon = 1e-9,
                                     std::size_t max_iterations = 2'000'000);

struct NormalizedValue {
    double value = 0.0;
    /// Worst case was -inf; value is reported as 0.
    bool exploitable = false;
};

/// worst_case_value / reference. Throws NonPositiveReference if reference <= 0.
NormalizedValue normalized_worst_case(const FiniteMdp& mdp, const TabularPolicy& policy, const RobustSetSpec& spec,
                                      double reference);

struct RobustGameConfig {
    std::size_t n_arms = 5;
    std::size_t n_problems = 10;
    std::size_t rounds = 20000;
    double alpha = 1.0;
    std::uint64_t seed = 0;
    std::size_t threads = 1;
};

struct RobustGameRow {
    std::size_t problem_id = 0;
    std::uint64_t seed = 0;
    Agent agent = Agent::maxent;
    std::size_t round = 0;
    double normalized_worst_case = 0.0;
};

struct RobustGameResult {
    /// Ordered by (problem_id, agent, round), agents as in the Agent enum.
    std::vector<RobustGameRow> rows;
    /// True arm means of each problem.
    std::vector<std::vector<double>> means;
};

/// Draws mu ~ N(0, I) per problem (redrawn until the game value is positive)
/// and runs the MaxEnt agent and both fictitious-play variants on it.
RobustGameResult run_robust_game_experiment(const RobustGameConfig& config);

} // namespace maxentgame
