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

#include "maxentgame/metapomdp.hpp"

#include <cmath>
#include <string>

#include "maxentgame/error.hpp"
#include "maxentgame/maxent.hpp"
#include "maxentgame/numeric.hpp"
#include "maxentgame/parallel.hpp"
#include "maxentgame/random.hpp"

namespace maxentgame {

MetaPomdp::MetaPomdp(FiniteMdp mdp, TrajectoryDist target) : mdp_(std::move(mdp)), target_(std::move(target)) {
    require(target_.is_normalized(1e-10), ErrorKind::InvalidArgument, "MetaPomdp: target belief must sum to 1");
    for (const auto& [tau, p] : target_.entries) {
        require(p >= 0.0, ErrorKind::InvalidArgument, "MetaPomdp: negative belief mass");
        require(p == 0.0 || is_feasible(mdp_, tau), ErrorKind::ShapeMismatch,
                "MetaPomdp: belief supported on a trajectory the MDP cannot produce");
    }
}

MetaPomdp MetaPomdp::bandit(std::span<const double> p) {
    return MetaPomdp(FiniteMdp::bandit(p.size()), TrajectoryDist::from_bandit(p));
}

double regret(std::span<const double> p, std::span<const double> pi) {
    require(p.size() == pi.size(), ErrorKind::ShapeMismatch, "regret: p and pi differ in length");
    double total = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0.0) continue;
        if (pi[i] == 0.0) return kInf;
        total += p[i] / pi[i];
    }
    return total;
}

double regret(const MetaPomdp& meta, const TrajectoryDist& policy_dist) {
    for (const auto& [tau, q] : policy_dist.entries)
        require(tau.length() == meta.mdp().horizon() && (q == 0.0 || is_feasible(meta.mdp(), tau)),
                ErrorKind::ShapeMismatch, "regret: policy distribution lives in a different MDP");
    double total = 0.0;
    for (const auto& [tau, p] : meta.target().entries) {
        if (p == 0.0) continue;
        const double q = policy_dist.prob(tau);
        if (q == 0.0) return kInf;
        total += p / q;
    }
    return total;
}

std::vector<double> optimal_target_policy(std::span<const double> p) {
    std::vector<double> out(p.size());
    double z = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) z += out[i] = std::sqrt(p[i]);
    require(z > 0.0, ErrorKind::DegenerateTarget, "optimal_target_policy: belief has no mass");
    for (double& v : out) v /= z;
    return out;
}

TrajectoryDist optimal_target_policy(const MetaPomdp& meta) {
    TrajectoryDist out;
    double z = 0.0;
    for (const auto& [tau, p] : meta.target().entries) z += std::sqrt(p);
    require(z > 0.0, ErrorKind::DegenerateTarget, "optimal_target_policy: belief has no mass");
    for (const auto& [tau, p] : meta.target().entries) out.entries.emplace(tau, std::sqrt(p) / z);
    return out;
}

double optimal_regret(std::span<const double> p) {
    double z = 0.0;
    for (double v : p) z += std::sqrt(v);
    return z * z;
}

double optimal_regret(const MetaPomdp& meta) {
    double z = 0.0;
    for (const auto& [tau, p] : meta.target().entries) z += std::sqrt(p);
    return z * z;
}

RewardTable maxent_reward_for_meta(const MetaPomdp& meta) {
    if (meta.mdp().is_bandit()) {
        const auto p = meta.target().bandit_masses(meta.mdp().n_actions());
        std::vector<double> r(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) r[i] = p[i] > 0.0 ? 0.5 * std::log(p[i]) : kNegInf;
        return RewardTable::bandit(r);
    }
    return decompose_trajectory_reward(meta.mdp(), optimal_target_policy(meta));
}

std::vector<double> BeliefState::means() const {
    std::vector<double> out(counts_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = mean(i);
    return out;
}

RegretCurve run_bandit_meta_experiment(const MetaExperimentConfig& config) {
    require(config.n_arms >= 2, ErrorKind::InvalidArgument, "metapomdp experiment needs at least 2 arms");
    require(config.n_problems >= 1 && config.n_pulls >= 1, ErrorKind::InvalidArgument,
            "metapomdp experiment needs at least one problem and one pull");
    require(config.temperature > 0.0, ErrorKind::InvalidArgument, "temperature must be positive");

    const std::size_t n = config.n_arms;
    std::vector<std::vector<RegretRow>> per_problem(config.n_problems);
    RegretCurve curve;
    curve.beliefs.resize(config.n_problems);
    curve.final_policies.resize(config.n_problems);

    parallel_for(config.n_problems, config.threads, [&](std::size_t k) {
        Rng rng = Rng::stream(config.seed, {0x6d657461ULL, k});
        const std::vector<double> p = rng.dirichlet_ones(n);
        std::vector<double> reward(n);
        for (std::size_t i = 0; i < n; ++i) reward[i] = 0.5 * std::log(p[i]);
        const double best = optimal_regret(p);

        BeliefState belief(n);
        auto& rows = per_problem[k];
        rows.reserve(config.n_pulls);
        std::vector<double> pi;
        for (std::size_t pull = 0; pull < config.n_pulls; ++pull) {
            pi = softmax(belief.means(), config.temperature);
            rows.push_back({k, config.seed, pull, regret(p, pi) / best});
            const std::size_t arm = rng.categorical(pi);
            belief.observe(arm, rng.normal(reward[arm], 1.0));
        }
        curve.beliefs[k] = p;
        curve.final_policies[k] = softmax(belief.means(), config.temperature);
    });

    curve.rows.reserve(config.n_problems * config.n_pulls);
    for (auto& rows : per_problem) curve.rows.insert(curve.rows.end(), rows.begin(), rows.end());
    return curve;
}

RegretBound regret_bound_check(std::span<const double> p, std::span<const double> pi) {
    require(p.size() == pi.size(), ErrorKind::ShapeMismatch, "regret_bound_check: p and pi differ in length");
    RegretBound out;
    double sum_sq_ratio = 0.0, kl = 0.0, z = 0.0;
    double a = kInf, b = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0.0) continue;
        require(pi[i] > 0.0, ErrorKind::UnboundedRatio, "regret_bound_check: pi is zero where p is not");
        const double ratio = p[i] / pi[i];
        a = std::min(a, ratio);
        b = std::max(b, ratio);
        sum_sq_ratio += p[i] * ratio;
        kl += p[i] * std::log(ratio);
        z += p[i] * p[i];
    }
    require(z > 0.0, ErrorKind::DegenerateTarget, "regret_bound_check: p has no mass");
    out.ratio_min = a;
    out.ratio_max = b;
    out.forward_kl = kl;
    out.jensen_gap_bound = 0.25 * (b - a) * (1.0 / a - 1.0 / b);
    out.lhs = std::log(sum_sq_ratio);
    out.rhs = kl + out.jensen_gap_bound;
    out.log_z = std::log(z);
    out.normalized_lhs = out.lhs - out.log_z;
    out.normalized_rhs = out.rhs - out.log_z;
    return out;
}

RegretBound regret_bound_check(const TrajectoryDist& p, const TrajectoryDist& pi) {
    std::vector<double> pv, qv;
    for (const auto& [tau, mass] : p.entries) {
        pv.push_back(mass);
        qv.push_back(pi.prob(tau));
    }
    return regret_bound_check(pv, qv);
}

} // namespace maxentgame
