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

#include "maxentgame/maxent.hpp"

#include <cmath>
#include <string>

#include "maxentgame/error.hpp"
#include "maxentgame/numeric.hpp"

namespace maxentgame {

SoftSolution soft_value_iteration(const FiniteMdp& mdp, const RewardTable& reward, double temperature) {
    check_shape(mdp, reward);
    require(temperature > 0.0 && std::isfinite(temperature), ErrorKind::InvalidArgument,
            "soft_value_iteration: temperature must be positive");
    const std::size_t T = mdp.horizon(), S = mdp.n_states(), A = mdp.n_actions();
    const TableShape shape = shape_of(mdp);

    std::vector<double> q(shape.size());
    std::vector<double> v(T * S);
    std::vector<double> probs(shape.size());
    std::vector<double> next_v(S, 0.0);

    for (std::size_t t = T; t-- > 0;) {
        for (std::size_t s = 0; s < S; ++s) {
            for (std::size_t a = 0; a < A; ++a) {
                double value = reward(t, s, a);
                if (t + 1 < T && value != kNegInf) {
                    auto next = mdp.next_states(s, a);
                    for (std::size_t s2 = 0; s2 < S; ++s2) value += weighted(next[s2], next_v[s2]);
                }
                q[shape.index(t, s, a)] = value;
            }
            std::span<const double> q_row(q.data() + shape.index(t, s, 0), A);
            const double vs = logsumexp(q_row, temperature);
            v[t * S + s] = vs;
            double* row = probs.data() + shape.index(t, s, 0);
            if (vs == kNegInf) {
                for (std::size_t a = 0; a < A; ++a) row[a] = 1.0 / static_cast<double>(A);
                continue;
            }
            double z = 0.0;
            for (std::size_t a = 0; a < A; ++a) {
                row[a] = q_row[a] == kNegInf ? 0.0 : std::exp((q_row[a] - vs) / temperature);
                z += row[a];
            }
            for (std::size_t a = 0; a < A; ++a) row[a] /= z;
        }
        for (std::size_t s = 0; s < S; ++s) next_v[s] = v[t * S + s];
    }

    double objective = 0.0;
    for (std::size_t s = 0; s < S; ++s) {
        if (mdp.initial(s) == 0.0) continue;
        require(v[s] != kNegInf, ErrorKind::DegenerateTarget,
                "soft_value_iteration: every action sequence from initial state " + std::to_string(s) +
                    " reaches reward -inf");
        objective += mdp.initial(s) * v[s];
    }
    return SoftSolution{TabularPolicy(shape, std::move(probs)), std::move(v), std::move(q), objective};
}

double expected_return(const FiniteMdp& mdp, const TabularPolicy& policy, const RewardTable& reward) {
    check_shape(mdp, reward);
    const auto d = state_occupancy(mdp, policy);
    double total = 0.0;
    for (std::size_t t = 0; t < mdp.horizon(); ++t)
        for (std::size_t s = 0; s < mdp.n_states(); ++s)
            for (std::size_t a = 0; a < mdp.n_actions(); ++a)
                total += weighted(d[t][s] * policy(t, s, a), reward(t, s, a));
    return total;
}

double expected_entropy(const FiniteMdp& mdp, const TabularPolicy& policy) {
    const auto d = state_occupancy(mdp, policy);
    double total = 0.0;
    for (std::size_t t = 0; t < mdp.horizon(); ++t)
        for (std::size_t s = 0; s < mdp.n_states(); ++s)
            if (d[t][s] > 0.0) total += d[t][s] * entropy(policy.row(t, s));
    return total;
}

double maxent_objective(const FiniteMdp& mdp, const TabularPolicy& policy, const RewardTable& reward,
                        double temperature) {
    return expected_return(mdp, policy, reward) + temperature * expected_entropy(mdp, policy);
}

namespace {

double path_reward(const RewardTable& reward, const Trajectory& tau) {
    double total = 0.0;
    for (std::size_t t = 0; t < tau.length(); ++t) total += reward(t, tau.states[t], tau.actions[t]);
    return total;
}

double path_log_policy(const TabularPolicy& policy, const Trajectory& tau) {
    double total = 0.0;
    for (std::size_t t = 0; t < tau.length(); ++t) total += std::log(policy(t, tau.states[t], tau.actions[t]));
    return total;
}

} // namespace

double kl_identity_gap(const FiniteMdp& mdp, const TabularPolicy& policy, const RewardTable& reward,
                       std::size_t cap) {
    check_shape(mdp, policy);
    check_shape(mdp, reward);
    const auto trajectories = enumerate_trajectories(mdp, cap);

    std::vector<double> log_target(trajectories.size());
    for (std::size_t i = 0; i < trajectories.size(); ++i)
        log_target[i] = std::log(dynamics_probability(mdp, trajectories[i])) + path_reward(reward, trajectories[i]);
    const double log_z = logsumexp(log_target);
    require(log_z != kNegInf, ErrorKind::DegenerateTarget, "kl_identity_gap: target normalizer is zero");

    double kl = 0.0;
    for (std::size_t i = 0; i < trajectories.size(); ++i) {
        const double log_dyn = std::log(dynamics_probability(mdp, trajectories[i]));
        const double log_pi = log_dyn + path_log_policy(policy, trajectories[i]);
        if (log_pi == kNegInf) continue;
        kl += std::exp(log_pi) * (log_pi - (log_target[i] - log_z));
    }
    const double j = maxent_objective(mdp, policy, reward, 1.0);
    if (j == kNegInf && kl == kInf) return 0.0;
    return std::abs(j - (log_z - kl));
}

RiskDiagnostics risk_seeking_diagnostics(const FiniteMdp& mdp, const TabularPolicy& policy,
                                         const RewardTable& reward, std::size_t cap) {
    const auto dist = policy_trajectory_distribution(mdp, policy, cap);
    check_shape(mdp, reward);
    std::vector<double> log_terms;
    double mean = 0.0;
    for (const auto& [tau, p] : dist.entries) {
        if (p == 0.0) continue;
        const double ret = path_reward(reward, tau);
        log_terms.push_back(std::log(p) + ret);
        mean += p * ret;
    }
    RiskDiagnostics out;
    out.log_mgf = logsumexp(log_terms);
    out.mean = mean;
    if (mean == kNegInf) {
        out.variance = kInf;
        return out;
    }
    // Centered second pass keeps the variance accurate for large returns.
    double var = 0.0;
    for (const auto& [tau, p] : dist.entries) {
        if (p == 0.0) continue;
        const double dev = path_reward(reward, tau) - mean;
        var += p * dev * dev;
    }
    out.variance = var;
    return out;
}

TabularPolicy markov_policy_from_distribution(const FiniteMdp& mdp, const TrajectoryDist& target) {
    const TableShape shape = shape_of(mdp);
    std::vector<double> joint(shape.size(), 0.0);
    for (const auto& [tau, p] : target.entries) {
        require(tau.length() == mdp.horizon(), ErrorKind::ShapeMismatch, "target trajectory has the wrong length");
        for (std::size_t t = 0; t < tau.length(); ++t) {
            require(tau.states[t] < mdp.n_states() && tau.actions[t] < mdp.n_actions(), ErrorKind::ShapeMismatch,
                    "target trajectory index out of range");
            joint[shape.index(t, tau.states[t], tau.actions[t])] += p;
        }
    }
    std::vector<double> probs(shape.size());
    for (std::size_t t = 0; t < shape.horizon; ++t) {
        for (std::size_t s = 0; s < shape.n_states; ++s) {
            double mass = 0.0;
            for (std::size_t a = 0; a < shape.n_actions; ++a) mass += joint[shape.index(t, s, a)];
            for (std::size_t a = 0; a < shape.n_actions; ++a)
                probs[shape.index(t, s, a)] = mass > 0.0 ? joint[shape.index(t, s, a)] / mass
                                                         : 1.0 / static_cast<double>(shape.n_actions);
            if (mass > 0.0) {
                // Renormalise so the row passes the 1e-12 construction check.
                double z = 0.0;
                for (std::size_t a = 0; a < shape.n_actions; ++a) z += probs[shape.index(t, s, a)];
                for (std::size_t a = 0; a < shape.n_actions; ++a) probs[shape.index(t, s, a)] /= z;
            }
        }
    }
    return TabularPolicy(shape, std::move(probs));
}

RewardTable decompose_trajectory_reward(const FiniteMdp& mdp, const TrajectoryDist& target, double tol,
                                        std::size_t cap) {
    const double total = target.total();
    require(total > 0.0, ErrorKind::DegenerateTarget, "decompose_trajectory_reward: target has no mass");
    for (const auto& [tau, p] : target.entries)
        require(p == 0.0 || is_feasible(mdp, tau), ErrorKind::NotMarkovian,
                "target puts mass on a trajectory the dynamics cannot produce");

    const TabularPolicy policy = markov_policy_from_distribution(mdp, target);
    const TrajectoryDist realized = policy_trajectory_distribution(mdp, policy, cap);
    for (const auto& [tau, p] : realized.entries)
        require(std::abs(p - target.prob(tau) / total) <= tol, ErrorKind::NotMarkovian,
                "no Markov policy reproduces the target distribution");

    std::vector<double> values(policy.shape().size());
    const auto probs = policy.values();
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = probs[i] > 0.0 ? std::log(probs[i]) : kNegInf;
    return RewardTable(policy.shape(), std::move(values));
}

RewardTable goal_reaching_reward(const FiniteMdp& mdp, std::span<const double> p_tilde) {
    require(p_tilde.size() == mdp.n_states() * mdp.n_actions(), ErrorKind::ShapeMismatch,
            "goal_reaching_reward: p_tilde must be [n_states][n_actions]");
    bool any_positive = false;
    for (double v : p_tilde) {
        require(std::isfinite(v) && v >= 0.0, ErrorKind::InvalidArgument,
                "goal_reaching_reward: p_tilde must be finite and non-negative");
        any_positive = any_positive || v > 0.0;
    }
    require(any_positive, ErrorKind::DegenerateTarget, "goal_reaching_reward: p_tilde is identically zero");

    const TableShape shape = shape_of(mdp);
    std::vector<double> values(shape.size(), 0.0);
    const std::size_t last = mdp.horizon() - 1;
    for (std::size_t s = 0; s < mdp.n_states(); ++s)
        for (std::size_t a = 0; a < mdp.n_actions(); ++a) {
            const double p = p_tilde[s * mdp.n_actions() + a];
            values[shape.index(last, s, a)] = p > 0.0 ? 0.5 * std::log(p) : kNegInf;
        }
    return RewardTable(shape, std::move(values));
}

bool verify_deterministic_reachability(const FiniteMdp& mdp, std::span<const StateAction> support) {
    const std::size_t S = mdp.n_states();
    for (const auto& target : support) {
        require(target.state < S && target.action < mdp.n_actions(), ErrorKind::InvalidArgument,
                "verify_deterministic_reachability: support index out of range");
        // States from which some deterministic policy lands in `target.state` at the last step surely.
        std::vector<char> good(S, 0);
        good[target.state] = 1;
        for (std::size_t t = mdp.horizon() - 1; t-- > 0;) {
            std::vector<char> prev(S, 0);
            for (std::size_t s = 0; s < S; ++s) {
                for (std::size_t a = 0; a < mdp.n_actions() && !prev[s]; ++a) {
                    auto next = mdp.next_states(s, a);
                    bool contained = true;
                    for (std::size_t s2 = 0; s2 < S; ++s2)
                        if (next[s2] > 0.0 && !good[s2]) contained = false;
                    prev[s] = contained;
                }
            }
            good = std::move(prev);
        }
        for (std::size_t s = 0; s < S; ++s)
            if (mdp.initial(s) > 0.0 && !good[s]) return false;
    }
    return true;
}

} // namespace maxentgame
