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

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <vector>

namespace maxentgame {

/// Portable random stream.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. Variates are derived here rather than through <random>
/// distributions, which are implementation-defined, so every experiment
/// produces the same numbers on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Independent stream for a (seed, id...) tuple, mixed through splitmix64.
    static Rng stream(std::uint64_t seed, std::initializer_list<std::uint64_t> ids);

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Uniform on (0, 1).
    double uniform_open();
    /// Standard normal (Marsaglia polar method, one cached spare).
    double normal();
    double normal(double mean, double stddev) { return mean + stddev * normal(); }
    /// Unit-rate exponential.
    double exponential();
    /// Dirichlet(1, ..., 1) through normalised unit exponentials.
    std::vector<double> dirichlet_ones(std::size_t n);
    /// Index drawn from a probability vector by inverse CDF.
    std::size_t categorical(std::span<const double> probs);

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x);

} // namespace maxentgame
