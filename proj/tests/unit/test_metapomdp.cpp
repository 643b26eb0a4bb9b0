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

#include "../test_util.hpp"
#include "maxentgame/error.hpp"
#include "maxentgame/generators.hpp"
#include "maxentgame/maxent.hpp"
#include "maxentgame/metapomdp.hpp"
#include "maxentgame/numeric.hpp"

using namespace maxentgame;

TEST_CASE("regret of a policy") {
    const std::vector<double> p{0.25, 0.75};
    CHECK_NEAR(regret(p, std::vector<double>{0.366025, 0.633975}), 1.866025, 1e-6);
    CHECK_NEAR(regret(p, p), 2.0, 1e-15);
    const std::vector<double> u(5, 0.2);
    CHECK_NEAR(regret(u, u), 5.0, 1e-14);
    CHECK(regret(p, std::vector<double>{1.0, 0.0}) == kInf);
    CHECK_THROWS_KIND(regret(p, std::vector<double>{1.0}), ErrorKind::ShapeMismatch);

    const auto meta = MetaPomdp::bandit(p);
    CHECK_NEAR(regret(meta, TrajectoryDist::from_bandit(std::vector<double>{0.5, 0.5})), 2.0, 1e-15);

    // A policy distribution from another MDP is rejected.
    TrajectoryDist elsewhere;
    elsewhere.entries[{{0, 0}, {0, 0}}] = 1.0;
    CHECK_THROWS_KIND(regret(meta, elsewhere), ErrorKind::ShapeMismatch);
}

TEST_CASE("sqrt policy is regret optimal") {
    const std::vector<double> p{0.25, 0.75};
    const auto pi = optimal_target_policy(p);
    CHECK_NEAR(pi[0], 0.366025, 1e-6);
    CHECK_NEAR(optimal_regret(p), 1.866025, 1e-6);
    CHECK_NEAR(regret(p, pi), optimal_regret(p), 1e-12);

    const std::vector<double> u(4, 0.25);
    CHECK_NEAR(optimal_regret(u), 4.0, 1e-14);
    for (double v : optimal_target_policy(u)) CHECK_NEAR(v, 0.25, 1e-15);

    const std::vector<double> point{0.0, 1.0, 0.0};
    CHECK(optimal_target_policy(point) == point);
    CHECK_NEAR(optimal_regret(point), 1.0, 1e-15);

    const auto meta = MetaPomdp::bandit(p);
    const auto dist = optimal_target_policy(meta);
    CHECK_NEAR(dist.bandit_masses(2)[1], 0.633975, 1e-6);
    CHECK_NEAR(optimal_regret(meta), 1.866025, 1e-6);

    Rng rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        const auto q = rng.dirichlet_ones(2 + trial % 5);
        const double best = regret(q, optimal_target_policy(q));
        CHECK_NEAR(best, optimal_regret(q), 1e-12 * optimal_regret(q));
        for (int j = 0; j < 200; ++j) CHECK(regret(q, rng.dirichlet_ones(q.size())) >= best - 1e-9);
    }
}

TEST_CASE("meta-pomdp validation") {
    CHECK_THROWS_KIND(MetaPomdp::bandit(std::vector<double>{0.5, 0.4}), ErrorKind::InvalidArgument);
    TrajectoryDist off;
    off.entries[{{0}, {3}}] = 1.0;
    CHECK_THROWS_KIND(MetaPomdp(FiniteMdp::bandit(2), off), ErrorKind::ShapeMismatch);
}

TEST_CASE("maxent reward for the meta-pomdp") {
    const auto meta = MetaPomdp::bandit(std::vector<double>{0.25, 0.75});
    const auto r = maxent_reward_for_meta(meta);
    CHECK_NEAR(r(0, 0, 0), -0.693147, 1e-6);
    CHECK_NEAR(r(0, 0, 1), -0.143841, 1e-6);
    const auto sol = soft_value_iteration(meta.mdp(), r);
    CHECK_NEAR(sol.policy(0, 0, 0), 0.366025, 1e-6);

    const auto uniform = maxent_reward_for_meta(MetaPomdp::bandit(std::vector<double>(3, 1.0 / 3.0)));
    CHECK(uniform(0, 0, 0) == uniform(0, 0, 2));

    // Tree leaf belief: the decomposed reward induces the same MaxEnt policy as the goal-reaching reward.
    const auto tree = deterministic_tree(2, 2);
    const std::vector<double> p_tilde{0.0, 0.0, 0.4, 0.3, 0.2, 0.1};
    TrajectoryDist belief;
    for (std::size_t s = 1; s <= 2; ++s)
        for (std::size_t a = 0; a < 2; ++a) belief.entries[{{0, s}, {s - 1, a}}] = p_tilde[s * 2 + a];
    const MetaPomdp tree_meta(tree, belief);
    const auto via_meta = soft_value_iteration(tree, maxent_reward_for_meta(tree_meta));
    const auto via_goal = soft_value_iteration(tree, goal_reaching_reward(tree, p_tilde));
    for (std::size_t k = 0; k < via_meta.policy.values().size(); ++k)
        CHECK_NEAR(via_meta.policy.values()[k], via_goal.policy.values()[k], 1e-12);
    const auto dist = policy_trajectory_distribution(tree, via_meta.policy);
    CHECK_NEAR(regret(tree_meta, dist), optimal_regret(tree_meta), 1e-12);
}

TEST_CASE("belief state") {
    BeliefState b(3);
    CHECK(b.mean(0) == 0.0);
    CHECK(b.variance(0) == 1.0);
    b.observe(1, 2.0);
    b.observe(1, 4.0);
    CHECK_NEAR(b.mean(1), 2.0, 1e-15);
    CHECK_NEAR(b.variance(1), 1.0 / 3.0, 1e-15);
    CHECK(b.count(1) == 2);
}

TEST_CASE("bandit meta experiment") {
    MetaExperimentConfig config;
    config.n_problems = 4;
    config.n_pulls = 300;
    const auto curve = run_bandit_meta_experiment(config);
    REQUIRE(curve.rows.size() == 1200);
    for (std::size_t k = 0; k < 4; ++k) {
        const auto& p = curve.beliefs[k];
        double root_sum = 0.0;
        for (double v : p) root_sum += std::sqrt(v);
        const auto& first = curve.rows[k * 300];
        CHECK(first.problem_id == k);
        CHECK(first.pull == 0);
        CHECK_NEAR(first.normalized_regret, 5.0 / (root_sum * root_sum), 1e-12);
    }
    for (const auto& row : curve.rows) CHECK(row.normalized_regret >= 1.0 - 1e-9);

    config.threads = 3;
    const auto again = run_bandit_meta_experiment(config);
    for (std::size_t i = 0; i < curve.rows.size(); ++i)
        CHECK(curve.rows[i].normalized_regret == again.rows[i].normalized_regret);

    config.n_arms = 1;
    CHECK_THROWS_KIND(run_bandit_meta_experiment(config), ErrorKind::InvalidArgument);
}

TEST_CASE("log-regret bound") {
    const std::vector<double> p{0.5, 0.5};
    const auto b = regret_bound_check(p, std::vector<double>{0.25, 0.75});
    CHECK_NEAR(b.lhs, 0.287682, 1e-6);
    CHECK_NEAR(b.rhs, 0.477174, 1e-6);
    CHECK_NEAR(b.ratio_min, 2.0 / 3.0, 1e-15);
    CHECK_NEAR(b.ratio_max, 2.0, 1e-15);
    CHECK(b.holds());
    CHECK_NEAR(b.normalized_lhs, b.lhs - std::log(0.5), 1e-15);

    const auto same = regret_bound_check(p, p);
    CHECK_NEAR(same.lhs, 0.0, 1e-15);
    CHECK_NEAR(same.rhs, 0.0, 1e-15);

    Rng rng(1000);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 2 + trial % 5;
        const auto q = rng.dirichlet_ones(n), pi = rng.dirichlet_ones(n);
        const auto bound = regret_bound_check(q, pi);
        CHECK(bound.lhs <= bound.rhs + 1e-12);
        double direct = 0.0;
        for (std::size_t i = 0; i < n; ++i) direct += q[i] * q[i] / pi[i];
        CHECK_NEAR(bound.lhs, std::log(direct), 1e-12);
    }
    CHECK_THROWS_KIND(regret_bound_check(p, std::vector<double>{1.0, 0.0}), ErrorKind::UnboundedRatio);
}
