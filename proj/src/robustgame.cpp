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

#include "maxentgame/robustgame.hpp"

#include <cmath>
#include <string>

#include "maxentgame/error.hpp"
#include "maxentgame/maxent.hpp"
#include "maxentgame/numeric.hpp"

namespace maxentgame {

std::string_view to_string(RobustVariant variant) {
    switch (variant) {
    case RobustVariant::exact: return "exact";
    case RobustVariant::dominated: return "dominated";
    case RobustVariant::finite: return "finite";
    }
    return "unknown";
}

std::string_view to_string(TraceKind kind) {
    switch (kind) {
    case TraceKind::set_trace: return "set_trace";
    case TraceKind::envelope: return "envelope";
    case TraceKind::objective: return "objective";
    }
    return "unknown";
}

RobustSetSpec::RobustSetSpec(RewardTable base, double temperature, RobustVariant variant,
                             std::vector<RewardTable> members)
    : base_(std::move(base)), temperature_(temperature), variant_(variant), members_(std::move(members)) {
    require(temperature_ > 0.0 && std::isfinite(temperature_), ErrorKind::InvalidArgument,
            "RobustSetSpec: temperature must be positive");
    for (const auto& m : members_)
        require(m.shape() == base_.shape(), ErrorKind::ShapeMismatch, "RobustSetSpec: members differ in shape");
}

RobustSetSpec RobustSetSpec::exact(RewardTable base, double temperature) {
    return RobustSetSpec(std::move(base), temperature, RobustVariant::exact, {});
}

RobustSetSpec RobustSetSpec::dominated(RewardTable base, double temperature) {
    return RobustSetSpec(std::move(base), temperature, RobustVariant::dominated, {});
}

RobustSetSpec RobustSetSpec::finite(std::vector<RewardTable> members) {
    require(!members.empty(), ErrorKind::InvalidArgument, "RobustSetSpec: finite set needs at least one member");
    RewardTable first = members.front();
    return RobustSetSpec(std::move(first), 1.0, RobustVariant::finite, std::move(members));
}

RewardTable adversarial_reward(const RewardTable& base, const AdversaryChoice& choice, double alpha) {
    require(choice.q.shape() == base.shape(), ErrorKind::ShapeMismatch, "adversarial_reward: q shape mismatch");
    require(alpha > 0.0, ErrorKind::InvalidArgument, "adversarial_reward: alpha must be positive");
    std::vector<double> out(base.values().begin(), base.values().end());
    const auto q = choice.q.values();
    for (std::size_t i = 0; i < out.size(); ++i) {
        require(q[i] > 0.0, ErrorKind::ZeroAdversaryMass,
                "adversarial_reward: q has zero mass, r - alpha log q would be +inf");
        if (out[i] != kNegInf) out[i] -= alpha * std::log(q[i]);
    }
    return RewardTable(base.shape(), std::move(out));
}

WorstCase worst_case_value(const FiniteMdp& mdp, const TabularPolicy& policy, const RobustSetSpec& spec) {
    check_shape(mdp, policy);
    WorstCase out;
    if (spec.variant() == RobustVariant::finite) {
        double best = kInf;
        for (std::size_t i = 0; i < spec.members().size(); ++i) {
            const double v = expected_return(mdp, policy, spec.members()[i]);
            if (v < best) {
                best = v;
                out.member_index = i;
            }
        }
        out.value = best;
    } else {
        out.value = maxent_objective(mdp, policy, spec.base(), spec.temperature());
        out.witness = AdversaryChoice{policy};
    }
    out.exploitable = out.value == kNegInf;
    return out;
}

bool membership(const RobustSetSpec& spec, const RewardTable& candidate, double tol) {
    require(candidate.shape() == spec.base().shape(), ErrorKind::ShapeMismatch, "membership: shape mismatch");
    if (spec.variant() == RobustVariant::finite) {
        for (const auto& m : spec.members()) {
            bool same = true;
            for (std::size_t i = 0; i < m.values().size() && same; ++i) {
                const double a = m.values()[i], b = candidate.values()[i];
                same = (a == b) || std::abs(a - b) <= tol;
            }
            if (same) return true;
        }
        return false;
    }

    const auto& shape = candidate.shape();
    const double alpha = spec.temperature();
    for (std::size_t t = 0; t < shape.horizon; ++t) {
        for (std::size_t s = 0; s < shape.n_states; ++s) {
            double mass = 0.0;
            for (std::size_t a = 0; a < shape.n_actions; ++a) {
                const double base = spec.base()(t, s, a);
                if (base == kNegInf) continue; // u = +inf, contributes e^{-inf} = 0
                const double u = candidate(t, s, a) - base;
                if (u < -tol) return false;
                mass += std::exp(-u / alpha);
            }
            if (spec.variant() == RobustVariant::exact) {
                if (std::abs(mass - 1.0) > tol) return false;
            } else if (mass > 1.0 + tol) {
                return false;
            }
        }
    }
    return true;
}

std::vector<double> open_grid(std::size_t n, double eps) {
    require(n >= 2, ErrorKind::InvalidArgument, "open_grid: need at least two points");
    std::vector<double> out(n);
    const double step = (1.0 - 2.0 * eps) / static_cast<double>(n - 1);
    for (std::size_t k = 0; k < n; ++k) out[k] = eps + step * static_cast<double>(k);
    return out;
}

std::vector<TraceRow> trace_robust_set_2arm(const RewardTable& base, double alpha, std::size_t n_grid,
                                            double scale, double shift) {
    require(base.horizon() == 1 && base.n_states() == 1 && base.n_actions() == 2, ErrorKind::ShapeMismatch,
            "trace_robust_set_2arm: base must be a two-arm bandit reward");
    require(n_grid >= 3, ErrorKind::InvalidArgument, "trace_robust_set_2arm: n_grid must be at least 3");
    require(alpha > 0.0, ErrorKind::InvalidArgument, "trace_robust_set_2arm: alpha must be positive");
    require(scale > 0.0, ErrorKind::InvalidArgument, "trace_robust_set_2arm: scale must be positive");
    const double r1 = base(0, 0, 0), r2 = base(0, 0, 1);
    require(std::isfinite(r1) && std::isfinite(r2), ErrorKind::InvalidArgument,
            "trace_robust_set_2arm: base rewards must be finite");

    const auto grid = open_grid(n_grid);
    std::vector<TraceRow> rows;
    rows.reserve(3 * n_grid);
    std::vector<double> set1(n_grid), set2(n_grid);
    for (std::size_t k = 0; k < n_grid; ++k) {
        const double q = grid[k];
        set1[k] = scale * (r1 - alpha * std::log(q)) + shift;
        set2[k] = scale * (r2 - alpha * std::log(1.0 - q)) + shift;
        rows.push_back({TraceKind::set_trace, q, set1[k], set2[k]});
    }
    for (const double p1 : grid) {
        double lowest = kInf, argmin_q = grid.front();
        for (std::size_t k = 0; k < n_grid; ++k) {
            const double v = p1 * set1[k] + (1.0 - p1) * set2[k];
            if (v < lowest) {
                lowest = v;
                argmin_q = grid[k];
            }
        }
        rows.push_back({TraceKind::envelope, p1, lowest, argmin_q});
    }
    for (const double p1 : grid) {
        const double expected = p1 * r1 + (1.0 - p1) * r2;
        const double h = -(p1 * std::log(p1) + (1.0 - p1) * std::log(1.0 - p1));
        rows.push_back({TraceKind::objective, p1, scale * (expected + alpha * h) + shift, expected});
    }
    return rows;
}

std::vector<std::vector<double>> simplex_grid(std::size_t n, std::size_t divisions) {
    require(n >= 1 && divisions >= 1, ErrorKind::InvalidArgument, "simplex_grid: n and divisions must be positive");
    std::vector<std::vector<double>> out;
    std::vector<std::size_t> counts(n, 0);
    // Enumerate compositions of `divisions` into n parts in lexicographic order.
    auto rec = [&](auto&& self, std::size_t i, std::size_t remaining) -> void {
        if (i + 1 == n) {
            counts[i] = remaining;
            std::vector<double> p(n);
            for (std::size_t j = 0; j < n; ++j)
                p[j] = static_cast<double>(counts[j]) / static_cast<double>(divisions);
            out.push_back(std::move(p));
            return;
        }
        for (std::size_t c = 0; c <= remaining; ++c) {
            counts[i] = c;
            self(self, i + 1, remaining - c);
        }
    };
    rec(rec, 0, divisions);
    return out;
}

std::vector<std::size_t> robust_argmax(const FiniteMdp& mdp, std::span<const RewardTable> members,
                                       std::span<const TabularPolicy> grid, double tie_tol) {
    require(!members.empty() && !grid.empty(), ErrorKind::InvalidArgument, "robust_argmax: empty members or grid");
    std::vector<double> values(grid.size(), kInf);
    double best = kNegInf;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        for (const auto& m : members) values[k] = std::min(values[k], expected_return(mdp, grid[k], m));
        best = std::max(best, values[k]);
    }
    const double threshold = best - tie_tol * std::max(1.0, std::abs(best));
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < grid.size(); ++k)
        if (values[k] >= threshold) out.push_back(k);
    return out;
}

bool affine_argmax_invariance(const FiniteMdp& mdp, const RobustSetSpec& spec_finite, double scale, double shift,
                              std::span<const TabularPolicy> grid, double tie_tol) {
    require(spec_finite.variant() == RobustVariant::finite, ErrorKind::InvalidArgument,
            "affine_argmax_invariance: needs a finite robust set");
    std::vector<RewardTable> transformed;
    transformed.reserve(spec_finite.members().size());
    for (const auto& m : spec_finite.members()) transformed.push_back(m.affine(scale, shift));
    return robust_argmax(mdp, spec_finite.members(), grid, tie_tol) == robust_argmax(mdp, transformed, grid, tie_tol);
}

} // namespace maxentgame
