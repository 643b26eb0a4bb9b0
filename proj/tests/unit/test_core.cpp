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
#include <cstdio>
#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "../oracles.hpp"
#include "../test_util.hpp"
#include "maxentgame/error.hpp"
#include "maxentgame/generators.hpp"
#include "maxentgame/mdp.hpp"
#include "maxentgame/numeric.hpp"
#include "maxentgame/random.hpp"
#include "maxentgame/tables.hpp"

using namespace maxentgame;

namespace {

/// Two states, two actions; every transition 0.5/0.5.
FiniteMdp noisy_chain(std::size_t horizon) {
    return FiniteMdp(2, 2, horizon, {0.5, 0.5}, std::vector<double>(8, 0.5));
}

/// Two states; action a moves to state a.
FiniteMdp deterministic_chain(std::size_t horizon) {
    return FiniteMdp(2, 2, horizon, {1.0, 0.0}, {1, 0, 0, 1, 1, 0, 0, 1});
}

} // namespace

TEST_CASE("numeric helpers") {
    const std::vector<double> x{1.0, 2.0, 3.0};
    CHECK_NEAR(logsumexp(x), std::log(std::exp(1.0) + std::exp(2.0) + std::exp(3.0)), 1e-14);
    CHECK_NEAR(logsumexp(x, 0.5), 0.5 * std::log(std::exp(2.0) + std::exp(4.0) + std::exp(6.0)), 1e-14);
    const std::vector<double> huge{1000.0, 1000.0};
    CHECK_NEAR(logsumexp(huge), 1000.0 + std::log(2.0), 1e-12);
    CHECK(logsumexp(std::vector<double>{kNegInf, kNegInf}) == kNegInf);

    const auto p = softmax(std::vector<double>{0.0, kNegInf, 0.0});
    CHECK(p[1] == 0.0);
    CHECK_NEAR(p[0], 0.5, 1e-15);
    CHECK_NEAR(entropy(std::vector<double>{0.5, 0.5, 0.0}), std::log(2.0), 1e-15);
    CHECK(weighted(0.0, kNegInf) == 0.0);
}

TEST_CASE("rng streams are reproducible and independent") {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

    Rng s1 = Rng::stream(7, {1, 2}), s2 = Rng::stream(7, {1, 2}), s3 = Rng::stream(7, {2, 1});
    CHECK(s1.next_u64() == s2.next_u64());
    CHECK(s1.next_u64() != s3.next_u64());

    // The first draw of mt19937_64 seeded with 5489 is fixed by the standard.
    Rng ref(5489);
    CHECK(ref.next_u64() == 14514284786278117030ULL);
}

TEST_CASE("rng variates have the right moments") {
    Rng rng(1);
    const int n = 200000;
    double sum = 0, sum2 = 0, esum = 0, usum = 0;
    for (int i = 0; i < n; ++i) {
        const double z = rng.normal();
        sum += z;
        sum2 += z * z;
        esum += rng.exponential();
        const double u = rng.uniform();
        CHECK((u >= 0.0 && u < 1.0));
        usum += u;
    }
    CHECK_NEAR(sum / n, 0.0, 0.01);
    CHECK_NEAR(sum2 / n, 1.0, 0.02);
    CHECK_NEAR(esum / n, 1.0, 0.01);
    CHECK_NEAR(usum / n, 0.5, 0.005);

    const auto d = rng.dirichlet_ones(6);
    CHECK_NEAR(maxentgame::sum(d), 1.0, 1e-14);

    std::vector<double> probs{0.2, 0.0, 0.8};
    std::vector<int> counts(3, 0);
    for (int i = 0; i < 50000; ++i) ++counts[rng.categorical(probs)];
    CHECK(counts[1] == 0);
    CHECK_NEAR(counts[0] / 50000.0, 0.2, 0.01);
}

TEST_CASE("tables validate their contents") {
    CHECK_THROWS_KIND(TabularPolicy::bandit({0.5, 0.6}), ErrorKind::InvalidArgument);
    CHECK_THROWS_KIND(TabularPolicy::bandit({1.5, -0.5}), ErrorKind::InvalidArgument);
    CHECK_THROWS_KIND(TabularPolicy(TableShape{1, 1, 2}, {1.0}), ErrorKind::ShapeMismatch);
    CHECK_THROWS_KIND(RewardTable::bandit({0.0, std::nan("")}), ErrorKind::InvalidArgument);
    CHECK_THROWS_KIND(RewardTable::bandit({0.0, kInf}), ErrorKind::InvalidArgument);
    CHECK_NOTHROW(RewardTable::bandit({0.0, kNegInf}));

    const auto r = RewardTable::bandit({1.0, kNegInf}).affine(2.0, 3.0);
    CHECK(r(0, 0, 0) == 5.0);
    CHECK(r(0, 0, 1) == kNegInf);
    CHECK(TabularPolicy::bandit({1.0, 0.0}).has_zero_entry());
    CHECK_FALSE(TabularPolicy::uniform(TableShape{2, 3, 4}).has_zero_entry());
}

TEST_CASE("mdp validation") {
    CHECK_THROWS_KIND(FiniteMdp(1, 1, 1, {0.9}, {1.0}), ErrorKind::InvalidArgument);
    CHECK_THROWS_KIND(FiniteMdp(2, 1, 1, {0.5, 0.5}, {0.5, 0.6, 1.0, 0.0}), ErrorKind::InvalidArgument);
    CHECK_THROWS_KIND(FiniteMdp(2, 1, 1, {0.5, 0.5}, {1.0}), ErrorKind::ShapeMismatch);
    CHECK_THROWS_KIND(FiniteMdp(1, 1, 0, {1.0}, {1.0}), ErrorKind::InvalidArgument);
    const auto bandit = FiniteMdp::bandit(3);
    CHECK(bandit.is_bandit());
    CHECK_THROWS_KIND(check_shape(bandit, TabularPolicy::bandit({0.5, 0.5})), ErrorKind::ShapeMismatch);
}

TEST_CASE("enumerate_trajectories counts") {
    CHECK(enumerate_trajectories(FiniteMdp::bandit(5)).size() == 5);
    CHECK(enumerate_trajectories(deterministic_tree(2, 2)).size() == 4);
    CHECK(enumerate_trajectories(noisy_chain(2)).size() == 16);
    CHECK_THROWS_KIND(enumerate_trajectories(noisy_chain(6), 1000), ErrorKind::CapExceeded);

    const auto all = enumerate_trajectories(noisy_chain(3));
    CHECK(std::is_sorted(all.begin(), all.end()));
    CHECK(all.size() == oracle::paths(noisy_chain(3)).size());
    for (const auto& tau : all) CHECK(is_feasible(noisy_chain(3), tau));
}

TEST_CASE("policy_trajectory_distribution") {
    const auto bandit = FiniteMdp::bandit(2);
    auto d = policy_trajectory_distribution(bandit, TabularPolicy::uniform(bandit));
    CHECK(d.bandit_masses(2) == std::vector<double>{0.5, 0.5});

    d = policy_trajectory_distribution(bandit, TabularPolicy::bandit({0.731059, 0.268941}));
    CHECK_NEAR(d.bandit_masses(2)[0], 0.731059, 1e-15);

    const auto chain = deterministic_chain(3);
    const auto det = TabularPolicy::stationary(chain, std::vector<double>{0, 1, 1, 0});
    d = policy_trajectory_distribution(chain, det);
    // Every dynamics-supported trajectory is listed; exactly one carries mass.
    std::size_t supported = 0;
    for (const auto& [tau, mass] : d.entries)
        if (mass > 0.0) {
            ++supported;
            CHECK(mass == 1.0);
        }
    CHECK(supported == 1);

    Rng rng(3);
    const auto mdp = random_mdp(rng, 3, 2, 3);
    const auto pi = random_policy(rng, shape_of(mdp));
    d = policy_trajectory_distribution(mdp, pi);
    CHECK(d.is_normalized());
    for (const auto& p : oracle::paths(mdp)) {
        Trajectory tau{p.states, p.actions};
        CHECK_NEAR(d.prob(tau), oracle::path_policy_prob(p, pi), 1e-15);
    }
}

TEST_CASE("target_distribution") {
    const auto bandit = FiniteMdp::bandit(2);
    const auto d = target_distribution(bandit, RewardTable::bandit({2.0, 1.0}));
    CHECK_NEAR(d.bandit_masses(2)[0], 0.731059, 1e-6);
    CHECK_NEAR(d.bandit_masses(2)[1], 0.268941, 1e-6);
    CHECK_NEAR(d.normalizer, 10.107338, 1e-6);

    Rng rng(5);
    const auto mdp = random_mdp(rng, 2, 2, 3);
    const auto flat = target_distribution(mdp, RewardTable::zeros(mdp));
    // Zero reward: p(tau) = dynamics(tau) / A^T.
    for (const auto& p : oracle::paths(mdp)) CHECK_NEAR(flat.prob({p.states, p.actions}), p.dynamics / 8.0, 1e-14);

    const auto tree = deterministic_tree(2, 2);
    const double p_tilde[] = {0.4, 0.3, 0.2, 0.1};
    std::vector<double> values(2 * 3 * 2, 0.0);
    for (int leaf = 0; leaf < 4; ++leaf) values[6 + 2 + leaf] = 0.5 * std::log(p_tilde[leaf]);
    values[6] = values[7] = kNegInf; // the root is never visited at the last step
    const auto leaves = target_distribution(tree, RewardTable(shape_of(tree), values));
    const double expected[] = {0.325401, 0.281805, 0.230093, 0.162700};
    int k = 0;
    for (const auto& [tau, mass] : leaves.entries) {
        if (mass == 0.0) continue;
        CHECK_NEAR(mass, expected[k++], 1e-6);
    }
    CHECK(k == 4);

    CHECK_THROWS_KIND(target_distribution(bandit, RewardTable::bandit({kNegInf, kNegInf})),
                      ErrorKind::DegenerateTarget);
}

TEST_CASE("state_action_marginal") {
    Rng rng(11);
    const auto mdp = random_mdp(rng, 3, 3, 3);
    const auto pi = random_policy(rng, shape_of(mdp));
    const auto first = state_action_marginal(mdp, pi, 0);
    for (std::size_t s = 0; s < 3; ++s)
        for (std::size_t a = 0; a < 3; ++a) CHECK_NEAR(first[s * 3 + a], mdp.initial(s) * pi(0, s, a), 1e-15);
    for (std::size_t t = 0; t < 3; ++t) {
        const auto m = state_action_marginal(mdp, pi, t);
        const auto o = oracle::marginal(mdp, pi, t);
        for (std::size_t k = 0; k < m.size(); ++k) CHECK_NEAR(m[k], o[k], 1e-14);
    }

    const auto chain = noisy_chain(3);
    for (double v : state_action_marginal(chain, TabularPolicy::uniform(chain), 2)) CHECK_NEAR(v, 0.25, 1e-15);
    CHECK_THROWS_KIND(state_action_marginal(chain, TabularPolicy::uniform(chain), 3), ErrorKind::InvalidArgument);
}

TEST_CASE("mdp json round trip") {
    Rng rng(2);
    const auto mdp = random_mdp(rng, 3, 2, 4);
    const auto back = mdp_from_json(mdp_to_json(mdp));
    CHECK(back.horizon() == 4);
    CHECK(std::vector<double>(back.transitions().begin(), back.transitions().end()) ==
          std::vector<double>(mdp.transitions().begin(), mdp.transitions().end()));

    const std::string path = "test_core_mdp.json";
    {
        std::ofstream out(path);
        out << R"({"n_states": 1, "n_actions": 2, "horizon": 1, "initial": [1],
                   "transition": [[[1], [1]]]})";
    }
    CHECK(load_mdp(path).is_bandit());
    std::remove(path.c_str());

    CHECK_THROWS_KIND(mdp_from_json(nlohmann::json::parse(R"({"n_states": 1})")), ErrorKind::InvalidArgument);
    CHECK_THROWS_KIND(
        mdp_from_json(nlohmann::json::parse(
            R"({"n_states": 2, "n_actions": 1, "horizon": 1, "initial": [1, 0], "transition": [[[1, 0]]]})")),
        ErrorKind::ShapeMismatch);
    CHECK_THROWS_KIND(load_mdp("does/not/exist.json"), ErrorKind::InvalidArgument);
}

TEST_CASE("deterministic tree layout") {
    const auto tree = deterministic_tree(3, 2);
    CHECK(tree.n_states() == 7);
    CHECK(enumerate_trajectories(tree).size() == 8);
    std::set<std::pair<std::size_t, std::size_t>> finals;
    for (const auto& tau : enumerate_trajectories(tree)) finals.insert({tau.states.back(), tau.actions.back()});
    CHECK(finals.size() == 8);
}
