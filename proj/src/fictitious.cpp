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

#include "maxentgame/fictitious.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "maxentgame/error.hpp"
#include "maxentgame/metapomdp.hpp"
#include "maxentgame/numeric.hpp"
#include "maxentgame/parallel.hpp"

namespace maxentgame {

std::string_view to_string(Agent agent) {
    switch (agent) {
    case Agent::maxent: return "maxent";
    case Agent::fp_noisy: return "fp_noisy";
    case Agent::fp_oracle: return "fp_oracle";
    }
    return "unknown";
}

double bandit_game_value(std::span<const double> mu, double alpha) { return logsumexp(mu, alpha); }

namespace {

void check_bandit_args(std::span<const double> mu, double alpha) {
    require(mu.size() >= 2, ErrorKind::InvalidArgument, "bandit game needs at least 2 arms");
    require(alpha > 0.0 && std::isfinite(alpha), ErrorKind::InvalidArgument, "alpha must be positive");
    for (double v : mu) require(std::isfinite(v), ErrorKind::InvalidArgument, "arm means must be finite");
}

/// Scores policies against the exact robust set of a bandit.
class BanditScorer {
public:
    BanditScorer(std::span<const double> mu, double alpha)
        : mdp_(FiniteMdp::bandit(mu.size())),
          spec_(RobustSetSpec::exact(RewardTable::bandit(mu), alpha)),
          reference_(bandit_game_value(mu, alpha)) {
        require(reference_ > 0.0, ErrorKind::NonPositiveReference,
                "bandit robust game: optimal worst case must be positive to normalise");
    }

    GameRow score(std::size_t round, std::span<const double> pi) const {
        const auto v = normalized_worst_case(mdp_, TabularPolicy::bandit(pi), spec_, reference_);
        return {round, v.value, v.exploitable};
    }

private:
    FiniteMdp mdp_;
    RobustSetSpec spec_;
    double reference_;
};

} // namespace

GameLog fictitious_play_robustset(std::span<const double> mu, double alpha, std::size_t rounds, FpMode mode,
                                  Rng rng) {
    check_bandit_args(mu, alpha);
    const std::size_t n = mu.size();
    const BanditScorer scorer(mu, alpha);

    GameLog log;
    log.agent = mode == FpMode::noisy ? Agent::fp_noisy : Agent::fp_oracle;
    log.n_arms = n;
    log.rows.reserve(rounds);
    log.policies.reserve(rounds * n);

    ArmEstimator estimator(n);
    std::vector<double> play_sum(n, 1.0 / static_cast<double>(n));
    double plays = 1.0;
    std::vector<double> pbar(n), adversarial(n);
    for (std::size_t round = 0; round < rounds; ++round) {
        for (std::size_t i = 0; i < n; ++i) {
            pbar[i] = play_sum[i] / plays;
            adversarial[i] = mu[i] - alpha * std::log(pbar[i]);
        }
        std::size_t arm = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (estimator.estimate(i) > estimator.estimate(arm)) arm = i;

        if (mode == FpMode::noisy) {
            estimator.observe(arm, adversarial[arm] + rng.normal());
        } else {
            for (std::size_t i = 0; i < n; ++i) estimator.observe(i, adversarial[i] + rng.normal());
        }
        play_sum[arm] += 1.0;
        plays += 1.0;
        for (std::size_t i = 0; i < n; ++i) pbar[i] = play_sum[i] / plays;

        log.rows.push_back(scorer.score(round, pbar));
        log.policies.insert(log.policies.end(), pbar.begin(), pbar.end());
    }
    return log;
}

GameLog maxent_bandit_agent(std::span<const double> mu, double alpha, std::size_t rounds, Rng rng) {
    check_bandit_args(mu, alpha);
    const std::size_t n = mu.size();
    const BanditScorer scorer(mu, alpha);

    GameLog log;
    log.agent = Agent::maxent;
    log.n_arms = n;
    log.rows.reserve(rounds);
    log.policies.reserve(rounds * n);

    BeliefState belief(n);
    for (std::size_t round = 0; round < rounds; ++round) {
        const auto pi = softmax(belief.means(), alpha);
        log.rows.push_back(scorer.score(round, pi));
        log.policies.insert(log.policies.end(), pi.begin(), pi.end());
        const std::size_t arm = rng.categorical(pi);
        belief.observe(arm, rng.normal(mu[arm], 1.0));
    }
    return log;
}

MatrixGameSolution matrix_game_solve(const std::vector<std::vector<double>>& payoffs, double epsilon,
                                     std::size_t max_iterations) {
    require(epsilon > 0.0, ErrorKind::InvalidArgument, "matrix_game_solve: epsilon must be positive");
    require(!payoffs.empty() && !payoffs.front().empty(), ErrorKind::InvalidArgument,
            "matrix_game_solve: empty payoff matrix");
    const std::size_t n = payoffs.size(), m = payoffs.front().size();
    double lo = kInf, hi = kNegInf;
    for (const auto& row : payoffs) {
        require(row.size() == m, ErrorKind::ShapeMismatch, "matrix_game_solve: ragged payoff matrix");
        for (double v : row) {
            require(std::isfinite(v), ErrorKind::InvalidArgument, "matrix_game_solve: payoffs must be finite");
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    const double range = hi - lo;

    // Guarantee of x against the best-responding member, and vice versa.
    auto guarantee = [&](std::span<const double> x) {
        double worst = kInf;
        for (std::size_t j = 0; j < m; ++j) {
            double v = 0.0;
            for (std::size_t i = 0; i < n; ++i) v += x[i] * payoffs[i][j];
            worst = std::min(worst, v);
        }
        return worst;
    };
    auto ceiling = [&](std::span<const double> y) {
        double best = kNegInf;
        for (std::size_t i = 0; i < n; ++i) {
            double v = 0.0;
            for (std::size_t j = 0; j < m; ++j) v += payoffs[i][j] * y[j];
            best = std::max(best, v);
        }
        return best;
    };

    MatrixGameSolution sol;
    sol.value = kNegInf;
    sol.upper = kInf;
    auto offer_policy = [&](std::span<const double> x) {
        const double v = guarantee(x);
        if (v > sol.value) {
            sol.value = v;
            sol.policy.assign(x.begin(), x.end());
        }
    };
    auto offer_adversary = [&](std::span<const double> y) {
        const double v = ceiling(y);
        if (v < sol.upper) {
            sol.upper = v;
            sol.adversary.assign(y.begin(), y.end());
        }
    };

    std::vector<double> unit;
    for (std::size_t i = 0; i < n; ++i) {
        unit.assign(n, 0.0);
        unit[i] = 1.0;
        offer_policy(unit);
    }
    for (std::size_t j = 0; j < m; ++j) {
        unit.assign(m, 0.0);
        unit[j] = 1.0;
        offer_adversary(unit);
    }

    std::vector<double> x(n, 1.0 / static_cast<double>(n)), y(m, 1.0 / static_cast<double>(m));
    offer_policy(x);
    offer_adversary(y);
    sol.gap = sol.upper - sol.value;
    if (sol.gap <= epsilon || range == 0.0) return sol;

    const double ln_size = std::log(static_cast<double>(std::max(n, m)) + 1.0);
    const double bound = std::ceil(8.0 * ln_size * range * range / (epsilon * epsilon));
    const std::size_t cap =
        bound >= static_cast<double>(max_iterations) ? max_iterations : static_cast<std::size_t>(bound);
    const double eta = 1.0 / (2.0 * range);

    std::vector<double> log_x(n, 0.0), log_y(m, 0.0);
    std::vector<double> gx(n), gy(m), prev_gx(n, 0.0), prev_gy(m, 0.0);
    std::vector<double> sum_x(n, 0.0), sum_y(m, 0.0), avg_x(n), avg_y(m);
    for (std::size_t it = 1; it <= cap; ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            gx[i] = 0.0;
            for (std::size_t j = 0; j < m; ++j) gx[i] += payoffs[i][j] * y[j];
        }
        for (std::size_t j = 0; j < m; ++j) {
            gy[j] = 0.0;
            for (std::size_t i = 0; i < n; ++i) gy[j] -= x[i] * payoffs[i][j];
        }
        const bool first = it == 1;
        for (std::size_t i = 0; i < n; ++i) log_x[i] += eta * (first ? gx[i] : 2.0 * gx[i] - prev_gx[i]);
        for (std::size_t j = 0; j < m; ++j) log_y[j] += eta * (first ? gy[j] : 2.0 * gy[j] - prev_gy[j]);
        prev_gx = gx;
        prev_gy = gy;
        x = softmax(log_x);
        y = softmax(log_y);

        for (std::size_t i = 0; i < n; ++i) avg_x[i] = (sum_x[i] += x[i]) / static_cast<double>(it);
        for (std::size_t j = 0; j < m; ++j) avg_y[j] = (sum_y[j] += y[j]) / static_cast<double>(it);
        offer_policy(x);
        offer_policy(avg_x);
        offer_adversary(y);
        offer_adversary(avg_y);
        sol.iterations = it;
        sol.gap = sol.upper - sol.value;
        if (sol.gap <= epsilon) return sol;
    }
    throw Error(ErrorKind::NonConvergence, "matrix_game_solve: duality gap " + std::to_string(sol.gap) +
                                               " above epsilon after " + std::to_string(cap) + " iterations");
}

NormalizedValue normalized_worst_case(const FiniteMdp& mdp, const TabularPolicy& policy, const RobustSetSpec& spec,
                                      double reference) {
    require(reference > 0.0 && std::isfinite(reference), ErrorKind::NonPositiveReference,
            "normalized_worst_case: reference value must be positive");
    const WorstCase wc = worst_case_value(mdp, policy, spec);
    if (wc.exploitable) return {0.0, true};
    return {wc.value / reference, false};
}

RobustGameResult run_robust_game_experiment(const RobustGameConfig& config) {
    require(config.n_arms >= 2, ErrorKind::InvalidArgument, "robustgame experiment needs at least 2 arms");
    require(config.n_problems >= 1 && config.rounds >= 1, ErrorKind::InvalidArgument,
            "robustgame experiment needs at least one problem and one round");
    require(config.alpha > 0.0 && std::isfinite(config.alpha), ErrorKind::InvalidArgument,
            "alpha must be positive");

    constexpr std::size_t kAgents = 3;
    RobustGameResult result;
    result.means.resize(config.n_problems);
    for (std::size_t k = 0; k < config.n_problems; ++k) {
        Rng rng = Rng::stream(config.seed, {1, k});
        std::vector<double> mu(config.n_arms);
        do {
            for (double& v : mu) v = rng.normal();
        } while (bandit_game_value(mu, config.alpha) <= 0.0);
        result.means[k] = std::move(mu);
    }

    std::vector<GameLog> logs(config.n_problems * kAgents);
    parallel_for(logs.size(), config.threads, [&](std::size_t job) {
        const std::size_t k = job / kAgents, a = job % kAgents;
        const auto& mu = result.means[k];
        Rng rng = Rng::stream(config.seed, {2, k, a});
        switch (static_cast<Agent>(a)) {
        case Agent::maxent: logs[job] = maxent_bandit_agent(mu, config.alpha, config.rounds, rng); break;
        case Agent::fp_noisy:
            logs[job] = fictitious_play_robustset(mu, config.alpha, config.rounds, FpMode::noisy, rng);
            break;
        case Agent::fp_oracle:
            logs[job] = fictitious_play_robustset(mu, config.alpha, config.rounds, FpMode::oracle, rng);
            break;
        }
    });

    result.rows.reserve(logs.size() * config.rounds);
    for (std::size_t job = 0; job < logs.size(); ++job) {
        const std::size_t k = job / kAgents;
        for (const auto& row : logs[job].rows)
            result.rows.push_back({k, config.seed, logs[job].agent, row.round, row.normalized_worst_case});
    }
    return result;
}

} // namespace maxentgame
