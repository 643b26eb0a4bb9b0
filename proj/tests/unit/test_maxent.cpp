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

#include <cmath>

#include "../oracles.hpp"
#include "../test_util.hpp"
#include "maxentgame/error.hpp"
#include "maxentgame/generators.hpp"
#include "maxentgame/maxent.hpp"
#include "maxentgame/numeric.hpp"

using namespace maxentgame;

namespace {

const std::vector<double> kPTilde{0.0, 0.0, 0.4, 0.3, 0.2, 0.1};
// sqrt(p~) / sum sqrt(p~), rounded to six places.
const std::vector<double> kLeafMasses{0.325401, 0.281805, 0.230093, 0.162700};

} // namespace

TEST_CASE("soft value iteration on the two-arm bandit") {
    const auto mdp = FiniteMdp::bandit(2);
    const auto sol = soft_value_iteration(mdp, RewardTable::bandit({2.0, 1.0}));
    CHECK_NEAR(sol.policy(0, 0, 0), 0.731059, 1e-6);
    CHECK_NEAR(sol.policy(0, 0, 1), 0.268941, 1e-6);
    CHECK_NEAR(sol.objective, 2.313262, 1e-6);
    CHECK_NEAR(sol.soft_value(0, 0), std::log(std::exp(2.0) + std::exp(1.0)), 1e-14);

    const auto sharp = soft_value_iteration(mdp, RewardTable::bandit({2.0, 1.0}), 1e-6);
    CHECK(sharp.policy(0, 0, 0) > 1.0 - 1e-3);

    const auto hot = soft_value_iteration(mdp, RewardTable::bandit({2.0, 1.0}), 2.0);
    CHECK_NEAR(hot.objective, 2.0 * std::log(std::exp(1.0) + std::exp(0.5)), 1e-14);
}

TEST_CASE("soft value iteration with zero reward maximises entropy") {
    Rng rng(4);
    const auto mdp = random_mdp(rng, 3, 4, 3);
    const auto sol = soft_value_iteration(mdp, RewardTable::zeros(mdp));
    CHECK_NEAR(sol.objective, 3.0 * std::log(4.0), 1e-12);
    for (double p : sol.policy.values()) CHECK_NEAR(p, 0.25, 1e-15);
}

TEST_CASE("soft value iteration matches the enumeration oracle and beats random policies") {
    Rng rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        const auto mdp = random_mdp(rng, 2 + trial % 2, 2 + trial % 3, 1 + trial % 3);
        const auto r = random_reward(rng, shape_of(mdp));
        const double alpha = 0.5 + trial % 3;
        const auto sol = soft_value_iteration(mdp, r, alpha);
        CHECK_NEAR(sol.objective, oracle::maxent_objective(mdp, sol.policy, r, alpha), 1e-10);
        for (int j = 0; j < 10; ++j)
            CHECK(oracle::maxent_objective(mdp, random_policy(rng, shape_of(mdp)), r, alpha) <= sol.objective + 1e-12);
    }
}

TEST_CASE("soft value iteration degenerate cases") {
    const auto mdp = FiniteMdp::bandit(2);
    CHECK_THROWS_KIND(soft_value_iteration(mdp, RewardTable::bandit({kNegInf, kNegInf})), ErrorKind::DegenerateTarget);
    CHECK_THROWS_KIND(soft_value_iteration(mdp, RewardTable::bandit({0.0, 0.0}), 0.0), ErrorKind::InvalidArgument);
    const auto partial = soft_value_iteration(mdp, RewardTable::bandit({0.0, kNegInf}));
    CHECK(partial.policy(0, 0, 1) == 0.0);
    CHECK_NEAR(partial.objective, 0.0, 1e-15);
}

TEST_CASE("maxent objective") {
    const auto mdp = FiniteMdp::bandit(2);
    const auto pi = TabularPolicy::bandit({0.731059, 0.268941});
    const auto r = RewardTable::bandit({2.0, 1.0});
    CHECK_NEAR(expected_return(mdp, pi, r), 1.731059, 1e-6);
    CHECK_NEAR(expected_entropy(mdp, pi), 0.582203, 1e-6);
    CHECK_NEAR(maxent_objective(mdp, pi, r), 2.313262, 1e-6);
    CHECK(maxent_objective(mdp, TabularPolicy::bandit({0.0, 1.0}), r) == 1.0);

    Rng rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        const auto m = random_mdp(rng, 3, 2, 1 + trial % 4);
        const auto p = random_policy(rng, shape_of(m));
        const auto rr = random_reward(rng, shape_of(m));
        CHECK_NEAR(maxent_objective(m, p, rr, 0.7), oracle::maxent_objective(m, p, rr, 0.7), 1e-11);
        CHECK_NEAR(expected_return(m, p, rr), oracle::expected_return(m, p, rr), 1e-11);
    }
}

TEST_CASE("kl identity") {
    const auto bandit = FiniteMdp::bandit(3);
    const auto r = RewardTable::bandit({0.3, -1.0, 2.0});
    CHECK(kl_identity_gap(bandit, TabularPolicy::bandit({0.2, 0.3, 0.5}), r) <= 1e-9);

    // Policy equal to the target distribution: KL = 0 and J = log Z.
    const auto sol = soft_value_iteration(bandit, r);
    CHECK_NEAR(oracle::kl_to_target(bandit, sol.policy, r), 0.0, 1e-14);
    CHECK_NEAR(sol.objective, oracle::log_partition(bandit, r), 1e-14);

    Rng rng(21);
    for (int trial = 0; trial < 30; ++trial) {
        const auto mdp = random_mdp(rng, 2, 2, 1 + trial % 3);
        const auto pi = random_policy(rng, shape_of(mdp));
        const auto rr = random_reward(rng, shape_of(mdp));
        CHECK(kl_identity_gap(mdp, pi, rr) <= 1e-9);
        // Independent evaluation of both sides.
        CHECK_NEAR(oracle::maxent_objective(mdp, pi, rr),
                   oracle::log_partition(mdp, rr) - oracle::kl_to_target(mdp, pi, rr), 1e-9);
    }
}

TEST_CASE("risk-seeking diagnostics") {
    const auto bandit = FiniteMdp::bandit(2);
    const auto d = risk_seeking_diagnostics(bandit, TabularPolicy::bandit({0.5, 0.5}), RewardTable::bandit({1.0, 0.0}));
    CHECK_NEAR(d.mean, 0.5, 1e-15);
    CHECK_NEAR(d.variance, 0.25, 1e-15);
    CHECK_NEAR(d.log_mgf, 0.620115, 1e-6);
    CHECK_NEAR(d.second_order(), 0.625, 1e-15);

    const FiniteMdp chain(2, 2, 3, {1.0, 0.0}, {1, 0, 0, 1, 1, 0, 0, 1});
    const auto det = TabularPolicy::stationary(chain, std::vector<double>{0, 1, 1, 0});
    Rng rng(2);
    const auto r = random_reward(rng, shape_of(chain));
    const auto dd = risk_seeking_diagnostics(chain, det, r);
    CHECK_NEAR(dd.log_mgf, dd.mean, 1e-12);
    CHECK_NEAR(dd.variance, 0.0, 1e-12);

    const auto zero = risk_seeking_diagnostics(chain, TabularPolicy::uniform(chain), RewardTable::zeros(chain));
    CHECK_NEAR(zero.log_mgf, 0.0, 1e-15);
}

TEST_CASE("decompose trajectory reward") {
    const auto bandit = FiniteMdp::bandit(2);
    const auto r = decompose_trajectory_reward(bandit, TrajectoryDist::from_bandit(std::vector<double>{0.731059, 0.268941}));
    CHECK_NEAR(r(0, 0, 0), std::log(0.731059), 1e-12);
    CHECK_NEAR(r(0, 0, 1) - r(0, 0, 0), 1.0 - 2.0, 1e-5);

    // A single deterministic trajectory gets reward 0 on its pairs.
    const FiniteMdp chain(2, 2, 2, {1.0, 0.0}, {1, 0, 0, 1, 1, 0, 0, 1});
    TrajectoryDist single;
    single.entries[{{0, 1}, {1, 0}}] = 1.0;
    const auto rs = decompose_trajectory_reward(chain, single);
    CHECK(rs(0, 0, 1) == 0.0);
    CHECK(rs(1, 1, 0) == 0.0);

    // Tree with the sqrt target: the MaxEnt policy of the decomposed reward reproduces the leaves.
    const auto tree = deterministic_tree(2, 2);
    TrajectoryDist leaves;
    double z = 0.0;
    for (double p : kPTilde) z += std::sqrt(p);
    for (std::size_t s = 1; s <= 2; ++s)
        for (std::size_t a = 0; a < 2; ++a) leaves.entries[{{0, s}, {s - 1, a}}] = std::sqrt(kPTilde[s * 2 + a]) / z;
    const auto rt = decompose_trajectory_reward(tree, leaves);
    const auto sol = soft_value_iteration(tree, rt);
    const auto marginal = oracle::marginal(tree, sol.policy, 1);
    for (int k = 0; k < 4; ++k) CHECK_NEAR(marginal[2 + k], kLeafMasses[k], 1e-6);

    // Correlated actions across steps cannot come from a Markov policy.
    const FiniteMdp one_state(1, 2, 2, {1.0}, {1.0, 1.0});
    TrajectoryDist correlated;
    correlated.entries[{{0, 0}, {0, 0}}] = 0.5;
    correlated.entries[{{0, 0}, {1, 1}}] = 0.5;
    CHECK_THROWS_KIND(decompose_trajectory_reward(one_state, correlated), ErrorKind::NotMarkovian);
}

TEST_CASE("goal-reaching reward") {
    const auto tree = deterministic_tree(2, 2);
    const auto r = goal_reaching_reward(tree, kPTilde);
    const double expected[] = {-0.458145, -0.601986, -0.804719, -1.151293};
    for (int k = 0; k < 4; ++k) CHECK_NEAR(r(1, 1 + k / 2, k % 2), expected[k], 1e-6);
    for (std::size_t s = 0; s < 3; ++s)
        for (std::size_t a = 0; a < 2; ++a) CHECK(r(0, s, a) == 0.0);

    const auto sol = soft_value_iteration(tree, r);
    const auto marginal = state_action_marginal(tree, sol.policy, 1);
    for (int k = 0; k < 4; ++k) CHECK_NEAR(marginal[2 + k], kLeafMasses[k], 1e-6);
    const auto brute = oracle::marginal(tree, sol.policy, 1);
    for (int k = 0; k < 4; ++k) CHECK_NEAR(marginal[2 + k], brute[2 + k], 1e-15);

    const auto uniform = soft_value_iteration(tree, goal_reaching_reward(tree, std::vector<double>{0, 0, 1, 1, 1, 1}));
    for (double p : state_action_marginal(tree, uniform.policy, 1)) CHECK((std::abs(p) < 1e-15 || std::abs(p - 0.25) < 1e-15));

    const auto zero = soft_value_iteration(tree, goal_reaching_reward(tree, std::vector<double>{0, 0, 0.5, 0.5, 0.0, 1.0}));
    const auto mz = state_action_marginal(tree, zero.policy, 1);
    CHECK(mz[4] == 0.0);
    CHECK(goal_reaching_reward(tree, std::vector<double>{0, 0, 0.5, 0.5, 0.0, 1.0})(1, 2, 0) == kNegInf);

    CHECK_THROWS_KIND(goal_reaching_reward(tree, std::vector<double>(6, 0.0)), ErrorKind::DegenerateTarget);
}

TEST_CASE("deterministic reachability") {
    const auto tree = deterministic_tree(2, 2);
    const std::vector<StateAction> leaves{{1, 0}, {1, 1}, {2, 0}, {2, 1}};
    CHECK(verify_deterministic_reachability(tree, leaves));
    const std::vector<StateAction> arms{{0, 0}, {0, 1}, {0, 2}};
    CHECK(verify_deterministic_reachability(FiniteMdp::bandit(3), arms));

    const FiniteMdp noisy(2, 2, 2, {0.5, 0.5}, std::vector<double>(8, 0.5));
    for (std::size_t s = 0; s < 2; ++s)
        for (std::size_t a = 0; a < 2; ++a) {
            const std::vector<StateAction> one{{s, a}};
            CHECK_FALSE(verify_deterministic_reachability(noisy, one));
        }
    // The root is not a final state of the depth-2 tree.
    const std::vector<StateAction> root{{0, 0}};
    CHECK_FALSE(verify_deterministic_reachability(tree, root));
}
