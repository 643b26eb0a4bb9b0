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

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

namespace maxentgame {

/// Log-zero sentinel. A reward of kNegInf means "this (s,a) carries no probability mass".
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// log sum_i exp(x_i) with max-shift; returns kNegInf for an empty or all-kNegInf input.
inline double logsumexp(std::span<const double> x) {
    double m = kNegInf;
    for (double v : x) m = std::max(m, v);
    if (m == kNegInf) return kNegInf;
    double acc = 0.0;
    for (double v : x) acc += std::exp(v - m);
    return m + std::log(acc);
}

/// Temperature-scaled LogSumExp: alpha * log sum exp(x / alpha).
inline double logsumexp(std::span<const double> x, double alpha) {
    std::vector<double> scaled(x.begin(), x.end());
    for (double& v : scaled) v /= alpha;
    return alpha * logsumexp(scaled);
}

inline std::vector<double> softmax(std::span<const double> x, double alpha = 1.0) {
    std::vector<double> out(x.size());
    double m = kNegInf;
    for (double v : x) m = std::max(m, v / alpha);
    double z = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        out[i] = (x[i] == kNegInf) ? 0.0 : std::exp(x[i] / alpha - m);
        z += out[i];
    }
    for (double& v : out) v /= z;
    return out;
}

/// Shannon entropy in nats; 0 log 0 = 0.
inline double entropy(std::span<const double> p) {
    double h = 0.0;
    for (double v : p)
        if (v > 0.0) h -= v * std::log(v);
    return h;
}

/// p * x with the measure-theoretic convention 0 * (+-inf) = 0.
inline double weighted(double p, double x) { return p == 0.0 ? 0.0 : p * x; }

inline double sum(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v;
    return s;
}

} // namespace maxentgame
