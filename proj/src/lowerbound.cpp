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

#include "maxentgame/lowerbound.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "maxentgame/error.hpp"
#include "maxentgame/fictitious.hpp"
#include "maxentgame/maxent.hpp"
#include "maxentgame/numeric.hpp"
#include "maxentgame/parallel.hpp"
#include "maxentgame/random.hpp"

namespace maxentgame {

namespace {

void check_members(std::span<const RewardTable> members) {
    require(!members.empty(), ErrorKind::InvalidArgument, "lowerbound: need at least one member");
    for (const auto& m : members) {
        require(m.shape() == members.front().shape(), ErrorKind::ShapeMismatch, "lowerbound: members differ in shape");
        for (double v : m.values())
            require(std::isfinite(v), ErrorKind::InvalidArgument, "lowerbound: member rewards must be finite");
    }
}

/// Barrier problem for one (t, s) row:
///   maximise pi.r + mu * sum_i log(-g_i(r)),  g_i(r) = log sum_a e^{(r_a - c_ia)/alpha}.
class RowBarrier {
public:
    RowBarrier(Eigen::VectorXd pi, Eigen::MatrixXd c, double alpha)
        : pi_(std::move(pi)), c_(std::move(c)), alpha_(alpha) {}

    /// Constraint values g_i.
    Eigen::VectorXd constraints(const Eigen::VectorXd& r) const {
        Eigen::VectorXd g(c_.rows());
        for (Eigen::Index i = 0; i < c_.rows(); ++i) {
            const Eigen::VectorXd z = (r - c_.row(i).transpose()) / alpha_;
            const double m = z.maxCoeff();
            g(i) = m + std::log((z.array() - m).exp().sum());
        }
        return g;
    }

    /// Barrier objective, or -inf outside the strict interior.
    double value(const Eigen::VectorXd& r, double mu) const {
        const Eigen::VectorXd g = constraints(r);
        if ((g.array() >= 0.0).any()) return kNegInf;
        return pi_.dot(r) + mu * (-g.array()).log().sum();
    }

    /// Gradient and Hessian of the barrier objective at a strictly feasible r.
    void derivatives(const Eigen::VectorXd& r, double mu, Eigen::VectorXd& grad, Eigen::MatrixXd& hess) const {
        const Eigen::Index n = r.size();
        grad = pi_;
        hess = Eigen::MatrixXd::Zero(n, n);
        for (Eigen::Index i = 0; i < c_.rows(); ++i) {
            const Eigen::VectorXd z = (r - c_.row(i).transpose()) / alpha_;
            const double m = z.maxCoeff();
            Eigen::VectorXd w = (z.array() - m).exp();
            const double total = w.sum();
            w /= total;
            const double g = m + std::log(total);
            const Eigen::VectorXd dg = w / alpha_;
            Eigen::MatrixXd d2g = -w * w.transpose();
            d2g.diagonal() += w;
            d2g /= alpha_ * alpha_;
            // d/dr log(-g) = dg / g;  d2/dr2 log(-g) = d2g / g - dg dg^T / g^2.
            grad += mu * dg / g;
            hess += mu * (d2g / g - dg * dg.transpose() / (g * g));
        }
    }

private:
    Eigen::VectorXd pi_;
    Eigen::MatrixXd c_;
    double alpha_;
};

/// Damped Newton ascent on one barrier stage. Returns false on hitting the cap.
bool newton_stage(const RowBarrier& problem, Eigen::VectorXd& r, double mu, const SubproblemOptions& opt) {
    Eigen::VectorXd grad;
    Eigen::MatrixXd hess;
    double current = problem.value(r, mu);
    for (std::size_t it = 0; it < opt.max_newton; ++it) {
        problem.derivatives(r, mu, grad, hess);
        const Eigen::MatrixXd neg = -hess + 1e-14 * Eigen::MatrixXd::Identity(r.size(), r.size());
        const Eigen::VectorXd step = neg.ldlt().solve(grad);
        const double decrement = grad.dot(step);
        if (!(decrement > opt.newton_tol)) return true;

        double t = 1.0;
        constexpr double kArmijo = 0.25;
        bool moved = false;
        while (t > 1e-16) {
            const Eigen::VectorXd trial = r + t * step;
            const double v = problem.value(trial, mu);
            if (v != kNegInf && v >= current + kArmijo * t * decrement) {
                r = trial;
                current = v;
                moved = true;
                break;
            }
            t *= 0.5;
        }
        // No representable ascent left: the stage optimum is reached to machine precision.
        if (!moved) return true;
    }
    return false;
}

} // namespace

RewardTable feasible_init(std::span<const RewardTable> members, double alpha) {
    check_members(members);
    require(alpha > 0.0, ErrorKind::InvalidArgument, "feasible_init: alpha must be positive");
    const auto& shape = members.front().shape();
    const double offset = alpha * std::log(static_cast<double>(shape.n_actions));
    std::vector<double> out(shape.size(), kInf);
    for (const auto& m : members)
        for (std::size_t k = 0; k < out.size(); ++k) out[k] = std::min(out[k], m.values()[k]);
    for (double& v : out) v -= offset;
    return RewardTable(shape, std::move(out));
}

double constraint_value(const RewardTable& reward, const RewardTable& member, std::size_t t, std::size_t s,
                        double alpha) {
    require(reward.shape() == member.shape(), ErrorKind::ShapeMismatch, "constraint_value: shape mismatch");
    const auto r = reward.row(t, s), c = member.row(t, s);
    std::vector<double> z(r.size());
    for (std::size_t a = 0; a < z.size(); ++a) z[a] = (r[a] - c[a]) / alpha;
    return logsumexp(z);
}

double max_constraint_violation(const RewardTable& reward, std::span<const RewardTable> members, double alpha) {
    double worst = kNegInf;
    const auto& shape = reward.shape();
    for (const auto& m : members)
        for (std::size_t t = 0; t < shape.horizon; ++t)
            for (std::size_t s = 0; s < shape.n_states; ++s)
                worst = std::max(worst, constraint_value(reward, m, t, s, alpha));
    return worst;
}

RewardTable solve_reward_subproblem(const TabularPolicy& policy, std::span<const RewardTable> members, double alpha,
                                    const SubproblemOptions& options, const RewardTable* warm_start) {
    check_members(members);
    require(alpha > 0.0, ErrorKind::InvalidArgument, "solve_reward_subproblem: alpha must be positive");
    require(options.mu0 > 0.0 && options.mu_decay > 0.0 && options.mu_decay < 1.0 && options.stages >= 1,
            ErrorKind::InvalidArgument, "solve_reward_subproblem: invalid barrier schedule");
    const auto& shape = members.front().shape();
    require(policy.shape() == shape, ErrorKind::ShapeMismatch, "solve_reward_subproblem: policy shape mismatch");

    std::vector<double> start;
    if (warm_start != nullptr) {
        require(warm_start->shape() == shape, ErrorKind::ShapeMismatch, "solve_reward_subproblem: warm start shape");
        require(max_constraint_violation(*warm_start, members, alpha) < 0.0, ErrorKind::InvalidArgument,
                "solve_reward_subproblem: warm start is not strictly feasible");
        start.assign(warm_start->values().begin(), warm_start->values().end());
    } else {
        const RewardTable init = feasible_init(members, alpha);
        start.assign(init.values().begin(), init.values().end());
        for (double& v : start) v -= alpha;
    }

    const auto n = static_cast<Eigen::Index>(shape.n_actions);
    const auto m = static_cast<Eigen::Index>(members.size());
    std::vector<double> out(start);
    for (std::size_t t = 0; t < shape.horizon; ++t) {
        for (std::size_t s = 0; s < shape.n_states; ++s) {
            Eigen::VectorXd pi(n), r(n);
            Eigen::MatrixXd c(m, n);
            for (Eigen::Index a = 0; a < n; ++a) {
                pi(a) = policy(t, s, static_cast<std::size_t>(a));
                r(a) = out[shape.index(t, s, static_cast<std::size_t>(a))];
                for (Eigen::Index i = 0; i < m; ++i) c(i, a) = members[i](t, s, static_cast<std::size_t>(a));
            }
            const RowBarrier problem(pi, c, alpha);
            double mu = options.mu0;
            for (std::size_t k = 0; k < options.stages; ++k, mu *= options.mu_decay) {
                if (!newton_stage(problem, r, mu, options))
                    throw Error(ErrorKind::NonConvergence, "solve_reward_subproblem: Newton cap reached at t=" +
                                                               std::to_string(t) + ", s=" + std::to_string(s));
            }
            for (Eigen::Index a = 0; a < n; ++a) out[shape.index(t, s, static_cast<std::size_t>(a))] = r(a);
        }
    }
    return RewardTable(shape, std::move(out));
}

LowerBoundResult lowerbound_maxent(const FiniteMdp& mdp, std::span<const RewardTable> members,
                                   const LowerBoundOptions& options) {
    check_members(members);
    check_shape(mdp, members.front());
    require(options.alpha > 0.0, ErrorKind::InvalidArgument, "lowerbound_maxent: alpha must be positive");
    require(options.max_outer >= 1, ErrorKind::InvalidArgument, "lowerbound_maxent: max_outer must be positive");

    RewardTable reward = feasible_init(members, options.alpha);
    SoftSolution soft = soft_value_iteration(mdp, reward, options.alpha);
    LowerBoundResult result{reward, soft.policy, soft.objective, 0.0, false, false, 0, {}};

    const RewardTable* warm = nullptr;
    double previous = kNegInf;
    for (std::size_t it = 0; it < options.max_outer; ++it) {
        reward = solve_reward_subproblem(soft.policy, members, options.alpha, options.subproblem, warm);
        const double j = maxent_objective(mdp, soft.policy, reward, options.alpha);
        result.history.push_back(j);
        result.outer_iterations = it + 1;
        soft = soft_value_iteration(mdp, reward, options.alpha);
        result.reward = reward;
        result.policy = soft.policy;
        result.objective = soft.objective;
        warm = &result.reward;
        if (std::abs(j - previous) < options.outer_tol) {
            result.converged = true;
            break;
        }
        previous = j;
    }
    result.max_violation = max_constraint_violation(result.reward, members, options.alpha);
    result.certified_feasible = result.max_violation <= 1e-8;
    return result;
}

TabularPolicy pointwise_min_baseline(const FiniteMdp& mdp, std::span<const RewardTable> members) {
    check_members(members);
    check_shape(mdp, members.front());
    const auto shape = shape_of(mdp);
    const std::size_t n_s = shape.n_states, n_a = shape.n_actions;
    std::vector<double> probs(shape.size(), 0.0);
    std::vector<double> next_v(n_s, 0.0), v(n_s);
    for (std::size_t t = shape.horizon; t-- > 0;) {
        for (std::size_t s = 0; s < n_s; ++s) {
            double best = kNegInf;
            std::size_t best_a = 0;
            for (std::size_t a = 0; a < n_a; ++a) {
                double q = kInf;
                for (const auto& m : members) q = std::min(q, m(t, s, a));
                for (std::size_t s2 = 0; s2 < n_s; ++s2) q += weighted(mdp.transition(s, a, s2), next_v[s2]);
                if (q > best) {
                    best = q;
                    best_a = a;
                }
            }
            v[s] = best;
            probs[shape.index(t, s, best_a)] = 1.0;
        }
        next_v = v;
    }
    return TabularPolicy(shape, std::move(probs));
}

TabularPolicy uniform_baseline(std::size_t n_arms) {
    require(n_arms >= 1, ErrorKind::InvalidArgument, "uniform_baseline: need at least one arm");
    return TabularPolicy::uniform(TableShape{1, 1, n_arms});
}

double minimax_value(const FiniteMdp& mdp, const TabularPolicy& policy, std::span<const RewardTable> members) {
    check_members(members);
    double worst = kInf;
    for (const auto& m : members) worst = std::min(worst, expected_return(mdp, policy, m));
    return worst;
}

std::string_view to_string(LowerBoundMethod method) {
    switch (method) {
    case LowerBoundMethod::lbme: return "lbme";
    case LowerBoundMethod::pointwise_min: return "pointwise_min";
    case LowerBoundMethod::uniform: return "uniform";
    case LowerBoundMethod::optimal: return "optimal";
    }
    return "unknown";
}

LowerBoundSuiteResult run_lowerbound_suite(const LowerBoundSuiteConfig& config) {
    require(config.n_arms >= 2, ErrorKind::InvalidArgument, "lowerbound suite needs at least 2 arms");
    require(config.n_members >= 1 && config.n_problems >= 1, ErrorKind::InvalidArgument,
            "lowerbound suite needs at least one member and one problem");

    LowerBoundSuiteResult result;
    result.problems.resize(config.n_problems);
    for (std::size_t k = 0; k < config.n_problems; ++k) {
        Rng rng = Rng::stream(config.seed, {3, k});
        auto& rewards = result.problems[k];
        rewards.assign(config.n_members, std::vector<double>(config.n_arms));
        for (auto& member : rewards)
            for (double& v : member) v = rng.normal();
        double global_min = kInf;
        for (const auto& member : rewards) global_min = std::min(global_min, *std::min_element(member.begin(), member.end()));
        for (auto& member : rewards) {
            const double low =
                config.shift_mode == ShiftMode::per_member ? *std::min_element(member.begin(), member.end()) : global_min;
            for (double& v : member) v = v - low + config.shift_offset;
        }
    }

    constexpr std::size_t kMethods = 4;
    std::vector<LowerBoundRow> rows(config.n_problems * kMethods);
    parallel_for(config.n_problems, config.threads, [&](std::size_t k) {
        const auto& rewards = result.problems[k];
        const FiniteMdp mdp = FiniteMdp::bandit(config.n_arms);
        std::vector<RewardTable> members;
        for (const auto& r : rewards) members.push_back(RewardTable::bandit(r));

        std::vector<std::vector<double>> payoffs(config.n_arms, std::vector<double>(config.n_members));
        for (std::size_t a = 0; a < config.n_arms; ++a)
            for (std::size_t i = 0; i < config.n_members; ++i) payoffs[a][i] = rewards[i][a];
        const MatrixGameSolution game = matrix_game_solve(payoffs, config.game_epsilon);
        require(game.upper > 0.0, ErrorKind::NonPositiveReference,
                "lowerbound suite: game value must be positive to normalise");

        auto score = [&](const TabularPolicy& pi) { return minimax_value(mdp, pi, members) / game.upper; };
        const LowerBoundResult lb = lowerbound_maxent(mdp, members, config.options);
        rows[k * kMethods + 0] = {k, LowerBoundMethod::lbme, score(lb.policy), lb.converged};
        rows[k * kMethods + 1] = {k, LowerBoundMethod::pointwise_min, score(pointwise_min_baseline(mdp, members)), true};
        rows[k * kMethods + 2] = {k, LowerBoundMethod::uniform, score(uniform_baseline(config.n_arms)), true};
        rows[k * kMethods + 3] = {k, LowerBoundMethod::optimal, score(TabularPolicy::bandit(game.policy)), true};
    });
    result.rows = std::move(rows);
    return result;
}

} // namespace maxentgame
