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

// Python bindings. Tables cross the boundary as float64 arrays shaped
// (horizon, n_states, n_actions); bandit helpers accept flat vectors.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include <nlohmann/json.hpp>

#include "maxentgame/error.hpp"
#include "maxentgame/fictitious.hpp"
#include "maxentgame/lowerbound.hpp"
#include "maxentgame/maxent.hpp"
#include "maxentgame/mdp.hpp"
#include "maxentgame/metapomdp.hpp"
#include "maxentgame/robustgame.hpp"
#include "maxentgame/selftest.hpp"

namespace py = pybind11;
using namespace maxentgame;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::vector<double> flat(const Array& a) { return {a.data(), a.data() + a.size()}; }

TableShape table_shape(const Array& a) {
    if (a.ndim() == 1) return {1, 1, static_cast<std::size_t>(a.shape(0))};
    if (a.ndim() != 3) throw Error(ErrorKind::ShapeMismatch, "expected a 1-d bandit vector or a (T, S, A) array");
    return {static_cast<std::size_t>(a.shape(0)), static_cast<std::size_t>(a.shape(1)),
            static_cast<std::size_t>(a.shape(2))};
}

RewardTable to_reward(const Array& a) { return RewardTable(table_shape(a), flat(a)); }
TabularPolicy to_policy(const Array& a) { return TabularPolicy(table_shape(a), flat(a)); }

std::vector<RewardTable> to_members(const std::vector<Array>& members) {
    std::vector<RewardTable> out;
    for (const auto& m : members) out.push_back(to_reward(m));
    return out;
}

Array to_array(const TableShape& shape, std::span<const double> values) {
    Array out({shape.horizon, shape.n_states, shape.n_actions});
    std::copy(values.begin(), values.end(), out.mutable_data());
    return out;
}
Array to_array(const RewardTable& r) { return to_array(r.shape(), r.values()); }
Array to_array(const TabularPolicy& p) { return to_array(p.shape(), p.values()); }

RobustSetSpec make_spec(const std::string& variant, const std::optional<Array>& reward, double temperature,
                        const std::optional<std::vector<Array>>& members) {
    if (variant == "finite") {
        if (!members) throw Error(ErrorKind::InvalidArgument, "finite robust set needs members");
        return RobustSetSpec::finite(to_members(*members));
    }
    if (!reward) throw Error(ErrorKind::InvalidArgument, "robust set needs a base reward");
    if (variant == "exact") return RobustSetSpec::exact(to_reward(*reward), temperature);
    if (variant == "dominated") return RobustSetSpec::dominated(to_reward(*reward), temperature);
    throw Error(ErrorKind::InvalidArgument, "unknown robust set variant '" + variant + "'");
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact maximum-entropy RL solvers and robust-game experiments";

    static py::exception<Error> error_type(m, "Error", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object inst = py::handle(error_type.ptr())(e.what());
            inst.attr("kind") = std::string(to_string(e.kind()));
            PyErr_SetObject(error_type.ptr(), inst.ptr());
        }
    });

    py::class_<FiniteMdp>(m, "FiniteMdp")
        .def(py::init([](std::size_t n_states, std::size_t n_actions, std::size_t horizon, const Array& initial,
                         const Array& transition) {
                 return FiniteMdp(n_states, n_actions, horizon, flat(initial), flat(transition));
             }),
             py::arg("n_states"), py::arg("n_actions"), py::arg("horizon"), py::arg("initial"), py::arg("transition"))
        .def_static("bandit", &FiniteMdp::bandit, py::arg("n_arms"))
        .def_static("from_json", [](const std::string& text) { return mdp_from_json(nlohmann::json::parse(text)); })
        .def("to_json", [](const FiniteMdp& mdp) { return mdp_to_json(mdp).dump(); })
        .def_property_readonly("n_states", &FiniteMdp::n_states)
        .def_property_readonly("n_actions", &FiniteMdp::n_actions)
        .def_property_readonly("horizon", &FiniteMdp::horizon);

    m.def(
        "soft_value_iteration",
        [](const FiniteMdp& mdp, const Array& reward, double temperature) {
            const auto sol = soft_value_iteration(mdp, to_reward(reward), temperature);
            py::dict out;
            out["policy"] = to_array(sol.policy);
            out["objective"] = sol.objective;
            Array v({mdp.horizon(), mdp.n_states()});
            std::copy(sol.soft_values.begin(), sol.soft_values.end(), v.mutable_data());
            out["soft_values"] = v;
            return out;
        },
        py::arg("mdp"), py::arg("reward"), py::arg("temperature") = 1.0);
    m.def(
        "expected_return",
        [](const FiniteMdp& mdp, const Array& pi, const Array& r) {
            return expected_return(mdp, to_policy(pi), to_reward(r));
        },
        py::arg("mdp"), py::arg("policy"), py::arg("reward"));
    m.def(
        "maxent_objective",
        [](const FiniteMdp& mdp, const Array& pi, const Array& r, double temperature) {
            return maxent_objective(mdp, to_policy(pi), to_reward(r), temperature);
        },
        py::arg("mdp"), py::arg("policy"), py::arg("reward"), py::arg("temperature") = 1.0);
    m.def(
        "kl_identity_gap",
        [](const FiniteMdp& mdp, const Array& pi, const Array& r) {
            return kl_identity_gap(mdp, to_policy(pi), to_reward(r));
        },
        py::arg("mdp"), py::arg("policy"), py::arg("reward"));

    m.def(
        "adversarial_reward",
        [](const Array& base, const Array& q, double alpha) {
            return to_array(adversarial_reward(to_reward(base), {to_policy(q)}, alpha));
        },
        py::arg("base"), py::arg("q"), py::arg("alpha") = 1.0);
    m.def(
        "worst_case_value",
        [](const FiniteMdp& mdp, const Array& pi, const std::optional<Array>& reward, const std::string& variant,
           double temperature, const std::optional<std::vector<Array>>& members) {
            const auto wc = worst_case_value(mdp, to_policy(pi), make_spec(variant, reward, temperature, members));
            py::dict out;
            out["value"] = wc.value;
            out["exploitable"] = wc.exploitable;
            out["member_index"] = wc.member_index ? py::cast(*wc.member_index) : py::none();
            return out;
        },
        py::arg("mdp"), py::arg("policy"), py::arg("reward") = py::none(), py::arg("variant") = "exact",
        py::arg("temperature") = 1.0, py::arg("members") = py::none());
    m.def(
        "membership",
        [](const Array& candidate, const std::optional<Array>& reward, const std::string& variant,
           double temperature, const std::optional<std::vector<Array>>& members, double tol) {
            return membership(make_spec(variant, reward, temperature, members), to_reward(candidate), tol);
        },
        py::arg("candidate"), py::arg("reward") = py::none(), py::arg("variant") = "dominated",
        py::arg("temperature") = 1.0, py::arg("members") = py::none(), py::arg("tol") = 1e-9);

    using Vec = std::vector<double>;
    m.def("regret", [](const Vec& p, const Vec& pi) { return regret(p, pi); }, py::arg("p"), py::arg("pi"));
    m.def("optimal_target_policy", [](const Vec& p) { return optimal_target_policy(p); }, py::arg("p"));
    m.def("optimal_regret", [](const Vec& p) { return optimal_regret(p); }, py::arg("p"));
    m.def(
        "regret_bound_check",
        [](const std::vector<double>& p, const std::vector<double>& pi) {
            const auto b = regret_bound_check(p, pi);
            py::dict out;
            out["lhs"] = b.lhs;
            out["rhs"] = b.rhs;
            out["forward_kl"] = b.forward_kl;
            out["jensen_gap_bound"] = b.jensen_gap_bound;
            out["holds"] = b.holds();
            return out;
        },
        py::arg("p"), py::arg("pi"));

    m.def("bandit_game_value", [](const Vec& mu, double alpha) { return bandit_game_value(mu, alpha); },
          py::arg("mu"), py::arg("alpha") = 1.0);
    m.def(
        "matrix_game_solve",
        [](const std::vector<std::vector<double>>& payoffs, double epsilon) {
            const auto s = matrix_game_solve(payoffs, epsilon);
            py::dict out;
            out["policy"] = s.policy;
            out["adversary"] = s.adversary;
            out["value"] = s.value;
            out["upper"] = s.upper;
            out["gap"] = s.gap;
            out["iterations"] = s.iterations;
            return out;
        },
        py::arg("payoffs"), py::arg("epsilon") = 1e-9);

    m.def(
        "feasible_init",
        [](const std::vector<Array>& members, double alpha) { return to_array(feasible_init(to_members(members), alpha)); },
        py::arg("members"), py::arg("alpha") = 1.0);
    m.def(
        "max_constraint_violation",
        [](const Array& reward, const std::vector<Array>& members, double alpha) {
            return max_constraint_violation(to_reward(reward), to_members(members), alpha);
        },
        py::arg("reward"), py::arg("members"), py::arg("alpha") = 1.0);
    m.def(
        "solve_reward_subproblem",
        [](const Array& policy, const std::vector<Array>& members, double alpha, std::size_t stages) {
            SubproblemOptions options;
            options.stages = stages;
            return to_array(solve_reward_subproblem(to_policy(policy), to_members(members), alpha, options));
        },
        py::arg("policy"), py::arg("members"), py::arg("alpha") = 1.0, py::arg("stages") = 8);
    m.def(
        "lowerbound_maxent",
        [](const FiniteMdp& mdp, const std::vector<Array>& members, double alpha, double outer_tol,
           std::size_t max_outer) {
            LowerBoundOptions options;
            options.alpha = alpha;
            options.outer_tol = outer_tol;
            options.max_outer = max_outer;
            const auto res = lowerbound_maxent(mdp, to_members(members), options);
            py::dict out;
            out["reward"] = to_array(res.reward);
            out["policy"] = to_array(res.policy);
            out["objective"] = res.objective;
            out["max_violation"] = res.max_violation;
            out["certified_feasible"] = res.certified_feasible;
            out["converged"] = res.converged;
            out["history"] = res.history;
            return out;
        },
        py::arg("mdp"), py::arg("members"), py::arg("alpha") = 1.0, py::arg("outer_tol") = 1e-8,
        py::arg("max_outer") = 500);
    m.def(
        "minimax_value",
        [](const FiniteMdp& mdp, const Array& policy, const std::vector<Array>& members) {
            return minimax_value(mdp, to_policy(policy), to_members(members));
        },
        py::arg("mdp"), py::arg("policy"), py::arg("members"));

    m.def(
        "run_selftest",
        [](std::uint64_t seed, std::size_t trials) {
            std::vector<std::tuple<std::string, bool, std::string>> out;
            for (const auto& r : run_selftest({seed, trials})) out.emplace_back(r.name, r.passed, r.detail);
            return out;
        },
        py::arg("seed") = 0, py::arg("trials") = 100);
}
