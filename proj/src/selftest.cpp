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

#include "maxentgame/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "maxentgame/csv.hpp"
#include "maxentgame/error.hpp"
#include "maxentgame/fictitious.hpp"
#include "maxentgame/generators.hpp"
#include "maxentgame/lowerbound.hpp"
#include "maxentgame/maxent.hpp"
#include "maxentgame/metapomdp.hpp"
#include "maxentgame/numeric.hpp"
#include "maxentgame/robustgame.hpp"

namespace maxentgame {

namespace {

using Check = std::function<PropertyResult(Rng&, std::size_t)>;

PropertyResult tolerance_result(std::string name, double worst, double tol) {
    return {std::move(name), worst <= tol, "max error " + format_number(worst)};
}

PropertyResult worst_case_matches_objective(Rng& rng, std::size_t trials) {
    double worst = 0.0;
    for (std::size_t k = 0; k < trials; ++k) {
        const std::size_t n = 2 + k % 4;
        const FiniteMdp mdp = FiniteMdp::bandit(n);
        const RewardTable r = random_reward(rng, shape_of(mdp));
        const TabularPolicy pi = random_policy(rng, shape_of(mdp));
        const auto wc = worst_case_value(mdp, pi, RobustSetSpec::exact(r));
        worst = std::max(worst, std::abs(wc.value - maxent_objective(mdp, pi, r)));
        // The witness attains the value and no other adversary does better.
        const double at_witness = expected_return(mdp, pi, adversarial_reward(r, *wc.witness));
        worst = std::max(worst, std::abs(at_witness - wc.value));
        for (int j = 0; j < 20; ++j) {
            const double other = expected_return(mdp, pi, adversarial_reward(r, {random_policy(rng, pi.shape())}));
            worst = std::max(worst, wc.value - other);
        }
    }
    return tolerance_result("worst_case_equals_maxent_objective", worst, 1e-9);
}

PropertyResult soft_value_iteration_optimal(Rng& rng, std::size_t trials) {
    double worst = 0.0;
    for (std::size_t k = 0; k < trials; ++k) {
        const FiniteMdp mdp = random_mdp(rng, 2 + k % 2, 2, 1 + k % 3);
        const RewardTable r = random_reward(rng, shape_of(mdp));
        const SoftSolution sol = soft_value_iteration(mdp, r);
        worst = std::max(worst, std::abs(sol.objective - maxent_objective(mdp, sol.policy, r)));
        for (int j = 0; j < 10; ++j)
            worst = std::max(worst, maxent_objective(mdp, random_policy(rng, shape_of(mdp)), r) - sol.objective);
    }
    return tolerance_result("soft_value_iteration_optimal", worst, 1e-9);
}

PropertyResult kl_identity(Rng& rng, std::size_t trials) {
    double worst = 0.0;
    for (std::size_t k = 0; k < trials; ++k) {
        const FiniteMdp mdp = random_mdp(rng, 2 + k % 2, 2 + k % 2, 1 + k % 3);
        const RewardTable r = random_reward(rng, shape_of(mdp));
        worst = std::max(worst, kl_identity_gap(mdp, random_policy(rng, shape_of(mdp)), r));
    }
    return tolerance_result("kl_identity", worst, 1e-9);
}

PropertyResult sqrt_policy_optimal(Rng& rng, std::size_t trials) {
    double worst = 0.0;
    for (std::size_t k = 0; k < trials; ++k) {
        const auto p = rng.dirichlet_ones(2 + k % 5);
        const double best = regret(p, optimal_target_policy(p));
        worst = std::max(worst, std::abs(best - optimal_regret(p)) / optimal_regret(p));
        for (int j = 0; j < 100; ++j) worst = std::max(worst, best - regret(p, rng.dirichlet_ones(p.size())));
    }
    return tolerance_result("sqrt_policy_minimises_regret", worst, 1e-9);
}

PropertyResult regret_bound(Rng& rng, std::size_t trials) {
    double worst = kNegInf;
    for (std::size_t k = 0; k < trials; ++k) {
        const std::size_t n = 2 + k % 5;
        const RegretBound b = regret_bound_check(rng.dirichlet_ones(n), rng.dirichlet_ones(n));
        worst = std::max(worst, b.lhs - b.rhs);
    }
    return {"log_regret_bound", worst <= 1e-12, "max lhs - rhs " + format_number(worst)};
}

PropertyResult temperature_nesting(Rng& rng, std::size_t trials) {
    const double cold = 0.5, hot = 2.0;
    bool nested = true, converse_fails = false;
    for (std::size_t k = 0; k < trials; ++k) {
        const std::size_t n = 2 + k % 4;
        const RewardTable r = RewardTable::bandit(std::vector<double>(n, 0.0));
        const auto q = TabularPolicy::bandit(rng.dirichlet_ones(n));
        nested = nested && membership(RobustSetSpec::dominated(r, cold), adversarial_reward(r, {q}, hot));
        converse_fails = converse_fails || !membership(RobustSetSpec::dominated(r, hot), adversarial_reward(r, {q}, cold));
    }
    return {"temperature_nesting", nested && converse_fails,
            std::string(nested ? "nested" : "not nested") + (converse_fails ? ", converse fails" : ", converse holds")};
}

PropertyResult affine_invariance(Rng& rng, std::size_t trials) {
    const FiniteMdp mdp = FiniteMdp::bandit(3);
    std::vector<TabularPolicy> grid;
    for (const auto& p : simplex_grid(3, 20)) grid.push_back(TabularPolicy::bandit(p));
    std::size_t failures = 0;
    for (std::size_t k = 0; k < trials; ++k) {
        std::vector<RewardTable> members;
        for (int i = 0; i < 3; ++i) members.push_back(random_reward(rng, shape_of(mdp)));
        const auto spec = RobustSetSpec::finite(members);
        for (double b : {0.5, 2.0, 10.0})
            for (double c : {-3.0, 0.0, 7.0}) failures += !affine_argmax_invariance(mdp, spec, b, c, grid);
    }
    return {"affine_argmax_invariance", failures == 0, std::to_string(failures) + " changed argmax sets"};
}

PropertyResult goal_reaching(Rng&, std::size_t) {
    const FiniteMdp tree = deterministic_tree(2, 2);
    const std::vector<double> p_tilde{0, 0, 0.4, 0.3, 0.2, 0.1};
    const auto sol = soft_value_iteration(tree, goal_reaching_reward(tree, p_tilde));
    const auto marginal = state_action_marginal(tree, sol.policy, 1);
    double z = 0.0;
    for (double v : p_tilde) z += std::sqrt(v);
    double worst = 0.0;
    for (std::size_t k = 0; k < p_tilde.size(); ++k) worst = std::max(worst, std::abs(marginal[k] - std::sqrt(p_tilde[k]) / z));
    return tolerance_result("goal_reaching_marginal", worst, 1e-9);
}

PropertyResult lower_bound_feasible(Rng& rng, std::size_t trials) {
    double worst_violation = kNegInf, worst_bound = kNegInf;
    const FiniteMdp mdp = FiniteMdp::bandit(4);
    for (std::size_t k = 0; k < std::min<std::size_t>(trials, 20); ++k) {
        std::vector<RewardTable> members;
        for (int i = 0; i < 3; ++i) members.push_back(random_reward(rng, shape_of(mdp), 1.0));
        const auto res = lowerbound_maxent(mdp, members);
        worst_violation = std::max(worst_violation, res.max_violation);
        worst_bound = std::max(worst_bound, res.objective - minimax_value(mdp, res.policy, members));
    }
    return {"lower_bound_certified", worst_violation <= 1e-8 && worst_bound <= 1e-6,
            "max violation " + format_number(worst_violation) + ", max J - minimax " + format_number(worst_bound)};
}

PropertyResult matrix_game_gap(Rng& rng, std::size_t trials) {
    double worst = 0.0;
    for (std::size_t k = 0; k < std::min<std::size_t>(trials, 20); ++k) {
        std::vector<std::vector<double>> a(2 + k % 4, std::vector<double>(2 + (k / 4) % 4));
        for (auto& row : a)
            for (double& v : row) v = rng.normal();
        worst = std::max(worst, matrix_game_solve(a, 1e-8).gap);
    }
    return tolerance_result("matrix_game_duality_gap", worst, 1e-8);
}

} // namespace

std::vector<PropertyResult> run_selftest(const SelftestConfig& config) {
    const std::vector<Check> checks{worst_case_matches_objective, soft_value_iteration_optimal, kl_identity,
                                    sqrt_policy_optimal,          regret_bound,                 temperature_nesting,
                                    affine_invariance,            goal_reaching,                lower_bound_feasible,
                                    matrix_game_gap};
    std::vector<PropertyResult> out;
    for (std::size_t i = 0; i < checks.size(); ++i) {
        Rng rng = Rng::stream(config.seed, {4, i});
        try {
            out.push_back(checks[i](rng, config.trials));
        } catch (const Error& e) {
            out.push_back({"property_" + std::to_string(i), false, std::string(to_string(e.kind())) + ": " + e.what()});
        }
    }
    return out;
}

} // namespace maxentgame
