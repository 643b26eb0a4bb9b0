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

#include <cstddef>

#include "maxentgame/mdp.hpp"
#include "maxentgame/random.hpp"
#include "maxentgame/tables.hpp"

namespace maxentgame {

/// Random dynamics: initial distribution and every p(.|s,a) drawn Dirichlet(1).
/// With `deterministic`, each (s,a) moves to one uniformly drawn next state.
FiniteMdp random_mdp(Rng& rng, std::size_t n_states, std::size_t n_actions, std::size_t horizon,
                     bool deterministic = false);

/// Every row drawn Dirichlet(1); full support almost surely.
TabularPolicy random_policy(Rng& rng, const TableShape& shape);

/// Entries N(mean, sd^2).
RewardTable random_reward(Rng& rng, const TableShape& shape, double mean = 0.0, double sd = 1.0);

/// Deterministic tree of the given depth: the root is state 0 and action a at
/// node v leads to child v * branching + a + 1. Nodes at the last level loop
/// to themselves. After `depth` steps the final (state, action) pairs are the
/// branching^depth leaves.
FiniteMdp deterministic_tree(std::size_t depth, std::size_t branching);

} // namespace maxentgame
