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

#include <compare>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "maxentgame/tables.hpp"

namespace maxentgame {

inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;

/// Finite-horizon tabular MDP with initial distribution p_1(s) and dynamics p(s'|s,a).
///
/// Steps are indexed 0..horizon-1. The transition out of the last step is
/// never used by any trajectory quantity but must still be a valid
/// distribution so the same dynamics can serve several horizons.
class FiniteMdp {
public:
    /// `transition` is flattened as [s][a][s'].
    FiniteMdp(std::size_t n_states, std::size_t n_actions, std::size_t horizon,
              std::vector<double> initial, std::vector<double> transition);

    /// One state, one step: trajectories are arms.
    static FiniteMdp bandit(std::size_t n_arms);

    std::size_t n_states() const { return n_states_; }
    std::size_t n_actions() const { return n_actions_; }
    std::size_t horizon() const { return horizon_; }
    bool is_bandit() const { return n_states_ == 1 && horizon_ == 1; }

    std::span<const double> initial() const { return initial_; }
    double initial(std::size_t s) const { return initial_[s]; }
    double transition(std::size_t s, std::size_t a, std::size_t next) const {
        return transition_[(s * n_actions_ + a) * n_states_ + next];
    }
    /// p(.|s,a) as a span over next states.
    std::span<const double> next_states(std::size_t s, std::size_t a) const {
        return {transition_.data() + (s * n_actions_ + a) * n_states_, n_states_};
    }
    std::span<const double> transitions() const { return transition_; }

private:
    std::size_t n_states_;
    std::size_t n_actions_;
    std::size_t horizon_;
    std::vector<double> initial_;
    std::vector<double> transition_;
};

struct StateAction {
    std::size_t state = 0;
    std::size_t action = 0;
    auto operator<=>(const StateAction&) const = default;
};

/// tau = (s_1, a_1, ..., s_T, a_T). Ordered lexicographically on the interleaved sequence.
struct Trajectory {
    std::vector<std::size_t> states;
    std::vector<std::size_t> actions;

    std::size_t length() const { return states.size(); }
    bool operator==(const Trajectory&) const = default;
    std::strong_ordering operator<=>(const Trajectory& other) const;
};

/// Explicit trajectory distribution for brute-force checks on tiny instances.
struct TrajectoryDist {
    std::map<Trajectory, double> entries;
    /// Z for distributions built from unnormalised weights (1 otherwise).
    double normalizer = 1.0;
    double log_normalizer = 0.0;

    double total() const;
    bool is_normalized(double tol = 1e-10) const;
    /// 0 for trajectories not present.
    double prob(const Trajectory& tau) const;

    /// Arm i -> probs[i] on a bandit.
    static TrajectoryDist from_bandit(std::span<const double> probs);
    /// Mass in arm order (requires single-step, single-state trajectories).
    std::vector<double> bandit_masses(std::size_t n_arms) const;
};

/// Every trajectory with nonzero dynamics support, in lexicographic order.
/// Throws CapExceeded once more than `cap` trajectories are found.
std::vector<Trajectory> enumerate_trajectories(const FiniteMdp& mdp,
                                               std::size_t cap = kDefaultEnumerationCap);

/// p_1(s_1) * prod_t p(s_{t+1}|s_t,a_t).
double dynamics_probability(const FiniteMdp& mdp, const Trajectory& tau);

/// True if `tau` has the MDP's horizon, in-range indices and nonzero dynamics probability.
bool is_feasible(const FiniteMdp& mdp, const Trajectory& tau);

TrajectoryDist policy_trajectory_distribution(const FiniteMdp& mdp, const TabularPolicy& policy,
                                              std::size_t cap = kDefaultEnumerationCap);

/// p_r(tau) ∝ dynamics(tau) * exp(sum_t r_t(s_t,a_t)), with its normalizer Z.
TrajectoryDist target_distribution(const FiniteMdp& mdp, const RewardTable& reward,
                                   std::size_t cap = kDefaultEnumerationCap);

/// Per-step state distributions d_t(s) under the policy, t = 0..T-1, by forward recursion.
std::vector<std::vector<double>> state_occupancy(const FiniteMdp& mdp, const TabularPolicy& policy);

/// rho_t(s,a) flattened [s][a], for step t in [0, T).
std::vector<double> state_action_marginal(const FiniteMdp& mdp, const TabularPolicy& policy,
                                          std::size_t step);

void check_shape(const FiniteMdp& mdp, const TabularPolicy& policy);
void check_shape(const FiniteMdp& mdp, const RewardTable& reward);

// JSON file format:
//   {"n_states": S, "n_actions": A, "horizon": T,
//    "initial": [S numbers],
//    "transition": [S][A][S] nested arrays}
FiniteMdp mdp_from_json(const nlohmann::json& doc);
nlohmann::json mdp_to_json(const FiniteMdp& mdp);
FiniteMdp load_mdp(const std::string& path);

} // namespace maxentgame
