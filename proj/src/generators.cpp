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

#include "maxentgame/generators.hpp"

#include <vector>

#include "maxentgame/error.hpp"

namespace maxentgame {

FiniteMdp random_mdp(Rng& rng, std::size_t n_states, std::size_t n_actions, std::size_t horizon,
                     bool deterministic) {
    require(n_states >= 1 && n_actions >= 1 && horizon >= 1, ErrorKind::InvalidArgument,
            "random_mdp: dimensions must be positive");
    std::vector<double> initial = rng.dirichlet_ones(n_states);
    std::vector<double> transition;
    transition.reserve(n_states * n_actions * n_states);
    for (std::size_t k = 0; k < n_states * n_actions; ++k) {
        if (deterministic) {
            std::vector<double> row(n_states, 0.0);
            row[static_cast<std::size_t>(rng.uniform() * static_cast<double>(n_states))] = 1.0;
            transition.insert(transition.end(), row.begin(), row.end());
        } else {
            const auto row = rng.dirichlet_ones(n_states);
            transition.insert(transition.end(), row.begin(), row.end());
        }
    }
    return FiniteMdp(n_states, n_actions, horizon, std::move(initial), std::move(transition));
}

TabularPolicy random_policy(Rng& rng, const TableShape& shape) {
    std::vector<double> probs;
    probs.reserve(shape.size());
    for (std::size_t k = 0; k < shape.horizon * shape.n_states; ++k) {
        const auto row = rng.dirichlet_ones(shape.n_actions);
        probs.insert(probs.end(), row.begin(), row.end());
    }
    return TabularPolicy(shape, std::move(probs));
}

RewardTable random_reward(Rng& rng, const TableShape& shape, double mean, double sd) {
    std::vector<double> values(shape.size());
    for (double& v : values) v = rng.normal(mean, sd);
    return RewardTable(shape, std::move(values));
}

FiniteMdp deterministic_tree(std::size_t depth, std::size_t branching) {
    require(depth >= 1 && branching >= 1, ErrorKind::InvalidArgument, "deterministic_tree: need depth, branching >= 1");
    // Internal levels 0..depth-1 hold the decision nodes.
    std::size_t n_states = 0, level_size = 1;
    for (std::size_t d = 0; d < depth; ++d, level_size *= branching) n_states += level_size;
    const std::size_t first_of_last_level = n_states - level_size / branching;

    std::vector<double> initial(n_states, 0.0);
    initial[0] = 1.0;
    std::vector<double> transition(n_states * branching * n_states, 0.0);
    for (std::size_t v = 0; v < n_states; ++v) {
        for (std::size_t a = 0; a < branching; ++a) {
            const std::size_t next = v >= first_of_last_level ? v : v * branching + a + 1;
            transition[(v * branching + a) * n_states + next] = 1.0;
        }
    }
    return FiniteMdp(n_states, branching, depth, std::move(initial), std::move(transition));
}

} // namespace maxentgame
