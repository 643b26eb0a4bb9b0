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

#include "maxentgame/mdp.hpp"

#include <cmath>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "maxentgame/error.hpp"
#include "maxentgame/numeric.hpp"

namespace maxentgame {

namespace {

constexpr double kConstructionTol = 1e-12;

void check_distribution(std::span<const double> p, const std::string& what) {
    double total = 0.0;
    for (double v : p) {
        require(std::isfinite(v) && v >= 0.0, ErrorKind::InvalidArgument,
                what + ": entries must be finite and non-negative");
        total += v;
    }
    require(std::abs(total - 1.0) <= kConstructionTol, ErrorKind::InvalidArgument,
            what + ": sums to " + std::to_string(total));
}

struct Enumerator {
    const FiniteMdp& mdp;
    std::size_t cap;
    std::vector<Trajectory> out;
    Trajectory path;

    void visit(std::size_t t, std::size_t s) {
        path.states.push_back(s);
        for (std::size_t a = 0; a < mdp.n_actions(); ++a) {
            path.actions.push_back(a);
            if (t + 1 == mdp.horizon()) {
                require(out.size() < cap, ErrorKind::CapExceeded,
                        "more than " + std::to_string(cap) + " trajectories");
                out.push_back(path);
            } else {
                auto next = mdp.next_states(s, a);
                for (std::size_t s2 = 0; s2 < next.size(); ++s2)
                    if (next[s2] > 0.0) visit(t + 1, s2);
            }
            path.actions.pop_back();
        }
        path.states.pop_back();
    }
};

} // namespace

FiniteMdp::FiniteMdp(std::size_t n_states, std::size_t n_actions, std::size_t horizon,
                     std::vector<double> initial, std::vector<double> transition)
    : n_states_(n_states), n_actions_(n_actions), horizon_(horizon), initial_(std::move(initial)),
      transition_(std::move(transition)) {
    require(n_states_ >= 1 && n_actions_ >= 1 && horizon_ >= 1, ErrorKind::InvalidArgument,
            "FiniteMdp: n_states, n_actions and horizon must be at least 1");
    require(initial_.size() == n_states_, ErrorKind::ShapeMismatch, "FiniteMdp: initial has wrong length");
    require(transition_.size() == n_states_ * n_actions_ * n_states_, ErrorKind::ShapeMismatch,
            "FiniteMdp: transition must have n_states * n_actions * n_states entries");
    check_distribution(initial_, "FiniteMdp initial");
    for (std::size_t s = 0; s < n_states_; ++s)
        for (std::size_t a = 0; a < n_actions_; ++a)
            check_distribution(next_states(s, a),
                               "FiniteMdp transition(s=" + std::to_string(s) + ", a=" + std::to_string(a) + ")");
}

FiniteMdp FiniteMdp::bandit(std::size_t n_arms) {
    return FiniteMdp(1, n_arms, 1, {1.0}, std::vector<double>(n_arms, 1.0));
}

std::strong_ordering Trajectory::operator<=>(const Trajectory& other) const {
    const std::size_t n = std::min(length(), other.length());
    for (std::size_t t = 0; t < n; ++t) {
        if (auto c = states[t] <=> other.states[t]; c != 0) return c;
        if (auto c = actions[t] <=> other.actions[t]; c != 0) return c;
    }
    return length() <=> other.length();
}

double TrajectoryDist::total() const {
    double s = 0.0;
    for (const auto& [tau, p] : entries) s += p;
    return s;
}

bool TrajectoryDist::is_normalized(double tol) const { return std::abs(total() - 1.0) <= tol; }

double TrajectoryDist::prob(const Trajectory& tau) const {
    auto it = entries.find(tau);
    return it == entries.end() ? 0.0 : it->second;
}

TrajectoryDist TrajectoryDist::from_bandit(std::span<const double> probs) {
    TrajectoryDist d;
    for (std::size_t i = 0; i < probs.size(); ++i) d.entries[Trajectory{{0}, {i}}] = probs[i];
    return d;
}

std::vector<double> TrajectoryDist::bandit_masses(std::size_t n_arms) const {
    std::vector<double> out(n_arms, 0.0);
    for (const auto& [tau, p] : entries) {
        require(tau.length() == 1 && tau.states[0] == 0 && tau.actions[0] < n_arms, ErrorKind::ShapeMismatch,
                "bandit_masses: not a bandit trajectory");
        out[tau.actions[0]] += p;
    }
    return out;
}

std::vector<Trajectory> enumerate_trajectories(const FiniteMdp& mdp, std::size_t cap) {
    Enumerator e{mdp, cap, {}, {}};
    for (std::size_t s = 0; s < mdp.n_states(); ++s)
        if (mdp.initial(s) > 0.0) e.visit(0, s);
    return std::move(e.out);
}

double dynamics_probability(const FiniteMdp& mdp, const Trajectory& tau) {
    double p = mdp.initial(tau.states[0]);
    for (std::size_t t = 0; t + 1 < tau.length(); ++t)
        p *= mdp.transition(tau.states[t], tau.actions[t], tau.states[t + 1]);
    return p;
}

bool is_feasible(const FiniteMdp& mdp, const Trajectory& tau) {
    if (tau.states.size() != mdp.horizon() || tau.actions.size() != mdp.horizon()) return false;
    for (std::size_t t = 0; t < tau.length(); ++t)
        if (tau.states[t] >= mdp.n_states() || tau.actions[t] >= mdp.n_actions()) return false;
    return dynamics_probability(mdp, tau) > 0.0;
}

void check_shape(const FiniteMdp& mdp, const TabularPolicy& policy) {
    require(policy.shape() == shape_of(mdp), ErrorKind::ShapeMismatch, "policy shape does not match the MDP");
}

void check_shape(const FiniteMdp& mdp, const RewardTable& reward) {
    require(reward.shape() == shape_of(mdp), ErrorKind::ShapeMismatch, "reward shape does not match the MDP");
}

TrajectoryDist policy_trajectory_distribution(const FiniteMdp& mdp, const TabularPolicy& policy,
                                              std::size_t cap) {
    check_shape(mdp, policy);
    TrajectoryDist d;
    for (auto& tau : enumerate_trajectories(mdp, cap)) {
        double p = dynamics_probability(mdp, tau);
        for (std::size_t t = 0; t < tau.length(); ++t) p *= policy(t, tau.states[t], tau.actions[t]);
        d.entries.emplace(std::move(tau), p);
    }
    return d;
}

TrajectoryDist target_distribution(const FiniteMdp& mdp, const RewardTable& reward, std::size_t cap) {
    check_shape(mdp, reward);
    auto trajectories = enumerate_trajectories(mdp, cap);
    std::vector<double> log_weights;
    log_weights.reserve(trajectories.size());
    for (const auto& tau : trajectories) {
        double lw = std::log(dynamics_probability(mdp, tau));
        for (std::size_t t = 0; t < tau.length(); ++t) lw += reward(t, tau.states[t], tau.actions[t]);
        log_weights.push_back(lw);
    }
    const double log_z = logsumexp(log_weights);
    require(log_z != kNegInf, ErrorKind::DegenerateTarget, "every supported trajectory has reward -inf");
    TrajectoryDist d;
    d.log_normalizer = log_z;
    d.normalizer = std::exp(log_z);
    for (std::size_t i = 0; i < trajectories.size(); ++i)
        d.entries.emplace(std::move(trajectories[i]), std::exp(log_weights[i] - log_z));
    return d;
}

std::vector<std::vector<double>> state_occupancy(const FiniteMdp& mdp, const TabularPolicy& policy) {
    check_shape(mdp, policy);
    const std::size_t S = mdp.n_states(), A = mdp.n_actions();
    std::vector<std::vector<double>> d(mdp.horizon(), std::vector<double>(S, 0.0));
    d[0].assign(mdp.initial().begin(), mdp.initial().end());
    for (std::size_t t = 0; t + 1 < mdp.horizon(); ++t) {
        for (std::size_t s = 0; s < S; ++s) {
            if (d[t][s] == 0.0) continue;
            for (std::size_t a = 0; a < A; ++a) {
                const double w = d[t][s] * policy(t, s, a);
                if (w == 0.0) continue;
                auto next = mdp.next_states(s, a);
                for (std::size_t s2 = 0; s2 < S; ++s2) d[t + 1][s2] += w * next[s2];
            }
        }
    }
    return d;
}

std::vector<double> state_action_marginal(const FiniteMdp& mdp, const TabularPolicy& policy, std::size_t step) {
    require(step < mdp.horizon(), ErrorKind::InvalidArgument, "state_action_marginal: step out of range");
    const auto d = state_occupancy(mdp, policy);
    std::vector<double> rho(mdp.n_states() * mdp.n_actions());
    for (std::size_t s = 0; s < mdp.n_states(); ++s)
        for (std::size_t a = 0; a < mdp.n_actions(); ++a)
            rho[s * mdp.n_actions() + a] = d[step][s] * policy(step, s, a);
    return rho;
}

FiniteMdp mdp_from_json(const nlohmann::json& doc) {
    try {
        const auto S = doc.at("n_states").get<std::size_t>();
        const auto A = doc.at("n_actions").get<std::size_t>();
        const auto T = doc.at("horizon").get<std::size_t>();
        auto initial = doc.at("initial").get<std::vector<double>>();
        const auto& tr = doc.at("transition");
        require(tr.is_array() && tr.size() == S, ErrorKind::ShapeMismatch, "transition must have n_states rows");
        std::vector<double> flat;
        flat.reserve(S * A * S);
        for (const auto& by_action : tr) {
            require(by_action.is_array() && by_action.size() == A, ErrorKind::ShapeMismatch,
                    "transition[s] must have n_actions rows");
            for (const auto& row : by_action) {
                auto next = row.get<std::vector<double>>();
                require(next.size() == S, ErrorKind::ShapeMismatch, "transition[s][a] must have n_states entries");
                flat.insert(flat.end(), next.begin(), next.end());
            }
        }
        return FiniteMdp(S, A, T, std::move(initial), std::move(flat));
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::InvalidArgument, std::string("MDP JSON: ") + e.what());
    }
}

nlohmann::json mdp_to_json(const FiniteMdp& mdp) {
    nlohmann::json tr = nlohmann::json::array();
    for (std::size_t s = 0; s < mdp.n_states(); ++s) {
        nlohmann::json by_action = nlohmann::json::array();
        for (std::size_t a = 0; a < mdp.n_actions(); ++a) {
            auto next = mdp.next_states(s, a);
            by_action.push_back(std::vector<double>(next.begin(), next.end()));
        }
        tr.push_back(std::move(by_action));
    }
    return {{"n_states", mdp.n_states()},
            {"n_actions", mdp.n_actions()},
            {"horizon", mdp.horizon()},
            {"initial", std::vector<double>(mdp.initial().begin(), mdp.initial().end())},
            {"transition", std::move(tr)}};
}

FiniteMdp load_mdp(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), ErrorKind::InvalidArgument, "cannot open " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::InvalidArgument, path + ": " + e.what());
    }
    return mdp_from_json(doc);
}

} // namespace maxentgame
