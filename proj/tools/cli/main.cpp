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

// Command-line driver: one subcommand per experiment, seeded CSV output.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "maxentgame/csv.hpp"
#include "maxentgame/error.hpp"
#include "maxentgame/fictitious.hpp"
#include "maxentgame/lowerbound.hpp"
#include "maxentgame/metapomdp.hpp"
#include "maxentgame/robustgame.hpp"
#include "maxentgame/selftest.hpp"

namespace mg = maxentgame;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

/// Reads `key=value` lines; blank lines and lines starting with # or ; are skipped.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw mg::Error(mg::ErrorKind::InvalidArgument, "cannot open config file " + path);
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
        line = trim(line);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw mg::Error(mg::ErrorKind::InvalidArgument,
                            path + ":" + std::to_string(lineno) + ": expected key=value");
        out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return out;
}

/// Splices config-file entries in front of the command-line flags. Entries
/// whose flag is also given on the command line are dropped, so the flag wins.
std::vector<std::string> expand_config(std::vector<std::string> args) {
    if (args.size() < 2) return args;
    std::string config_path;
    std::set<std::string> given;
    for (std::size_t i = 2; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0) config_path = args[i].substr(9);
        if (args[i].rfind("--", 0) == 0) given.insert(args[i].substr(2, args[i].find('=') - 2));
    }
    if (config_path.empty()) return args;
    std::vector<std::string> out(args.begin(), args.begin() + 2);
    for (const auto& [key, value] : read_config_file(config_path)) {
        if (key == "subcommand" || key == "config" || given.contains(key)) continue;
        out.push_back("--" + key);
        out.push_back(value);
    }
    out.insert(out.end(), args.begin() + 2, args.end());
    return out;
}

/// Writes `<out>.config` with every option of the subcommand as key=value.
void write_config_echo(const CLI::App& sub, const std::string& out_path) {
    std::ofstream echo(out_path + ".config");
    echo << "subcommand=" << sub.get_name() << '\n';
    for (const CLI::Option* opt : sub.get_options()) {
        const std::string name = opt->get_single_name();
        if (name == "help" || name == "config" || name.empty()) continue;
        std::string value;
        if (opt->count() > 0) {
            const auto results = opt->reduced_results();
            for (std::size_t i = 0; i < results.size(); ++i) value += (i ? "," : "") + results[i];
        } else {
            value = opt->get_default_str();
            // Vector defaults render as [a,b]; echo them as the a,b the flag accepts.
            if (value.size() >= 2 && value.front() == '[' && value.back() == ']') value = value.substr(1, value.size() - 2);
        }
        echo << name << '=' << value << '\n';
    }
    if (!echo) throw mg::Error(mg::ErrorKind::InvalidArgument, "cannot write " + out_path + ".config");
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw mg::Error(mg::ErrorKind::InvalidArgument, "cannot open output file " + path);
    return out;
}

void finish(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) throw mg::Error(mg::ErrorKind::InvalidArgument, "failed writing " + path);
}

struct Common {
    std::uint64_t seed = 0;
    std::string out;
    std::size_t threads = 1;
    std::string config;
};

void add_common(CLI::App* sub, Common& c, const std::string& default_out) {
    c.out = default_out;
    sub->add_option("--seed", c.seed, "Base seed of every random stream");
    sub->add_option("--out", c.out, "Output CSV path");
    sub->add_option("--threads", c.threads, "Worker threads (output does not depend on it)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--config", c.config, "key=value file; command-line flags take precedence");
}

} // namespace

int main(int argc, char** argv) {
    std::vector<std::string> raw(argv, argv + argc);
    std::vector<std::string> args;
    try {
        args = expand_config(raw);
    } catch (const mg::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }

    CLI::App app{"Exact MaxEnt RL solvers with regret, robust-game and lower-bound experiments"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    // metapomdp
    Common meta_common;
    mg::MetaExperimentConfig meta;
    auto* meta_cmd = app.add_subcommand("metapomdp", "Bandit meta-POMDP regret curves");
    add_common(meta_cmd, meta_common, "metapomdp.csv");
    meta_cmd->add_option("--arms", meta.n_arms, "Number of arms (>= 2)");
    meta_cmd->add_option("--problems", meta.n_problems, "Number of random target beliefs");
    meta_cmd->add_option("--pulls", meta.n_pulls, "Pulls per problem");
    meta_cmd->add_option("--temperature", meta.temperature, "Softmax temperature of the agent");

    // robustgame
    Common game_common;
    mg::RobustGameConfig game;
    auto* game_cmd = app.add_subcommand("robustgame", "MaxEnt agent vs fictitious play on the robust bandit game");
    add_common(game_cmd, game_common, "robustgame.csv");
    game_cmd->add_option("--arms", game.n_arms, "Number of arms (>= 2)");
    game_cmd->add_option("--problems", game.n_problems, "Number of random problems");
    game_cmd->add_option("--rounds", game.rounds, "Rounds per agent");
    game_cmd->add_option("--alpha", game.alpha, "Entropy temperature of the robust set");

    // trace
    Common trace_common;
    std::vector<double> trace_reward{1.0, 0.0};
    std::vector<double> trace_alphas{1.0}, trace_scales{1.0}, trace_shifts{0.0};
    std::size_t trace_grid = 201;
    auto* trace_cmd = app.add_subcommand("trace", "Two-arm robust set, worst-case envelope and objective");
    add_common(trace_cmd, trace_common, "trace.csv");
    trace_cmd->add_option("--reward", trace_reward, "Base rewards of the two arms")
        ->delimiter(',')
        ->expected(2)
        ->multi_option_policy(CLI::MultiOptionPolicy::Throw);
    trace_cmd->add_option("--alpha", trace_alphas, "Temperatures (comma list fans out)")->delimiter(',');
    trace_cmd->add_option("--scale", trace_scales, "Affine scales b > 0 (comma list fans out)")->delimiter(',');
    trace_cmd->add_option("--shift", trace_shifts, "Affine shifts c (comma list fans out)")->delimiter(',');
    trace_cmd->add_option("--grid", trace_grid, "Grid points on (0, 1)");

    // lowerbound
    Common lb_common;
    mg::LowerBoundSuiteConfig lb;
    std::string lb_shift = "per_member";
    auto* lb_cmd = app.add_subcommand("lowerbound", "LowerBound+MaxEnt against baselines on finite reward sets");
    add_common(lb_cmd, lb_common, "lowerbound.csv");
    lb_cmd->add_option("--problems", lb.n_problems, "Number of random problems");
    lb_cmd->add_option("--arms", lb.n_arms, "Number of arms (>= 2)");
    lb_cmd->add_option("--members", lb.n_members, "Reward functions per problem");
    lb_cmd->add_option("--shift", lb_shift, "Positivity shift")->check(CLI::IsMember({"per_member", "global"}));
    lb_cmd->add_option("--shift-offset", lb.shift_offset, "Constant added after the shift");
    lb_cmd->add_option("--alpha", lb.options.alpha, "Entropy temperature");
    lb_cmd->add_option("--outer-tol", lb.options.outer_tol, "Stop when the objective changes by less");
    lb_cmd->add_option("--max-outer", lb.options.max_outer, "Outer iteration cap");
    lb_cmd->add_option("--barrier-stages", lb.options.subproblem.stages, "Barrier stages per subproblem");
    lb_cmd->add_option("--game-epsilon", lb.game_epsilon, "Duality gap of the reference game solve");

    // selftest
    mg::SelftestConfig self;
    std::string self_config;
    auto* self_cmd = app.add_subcommand("selftest", "Run the built-in property checks");
    self_cmd->add_option("--seed", self.seed, "Base seed");
    self_cmd->add_option("--trials", self.trials, "Random instances per property");
    self_cmd->add_option("--config", self_config, "key=value file; command-line flags take precedence");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (meta_cmd->parsed()) {
            meta.seed = meta_common.seed;
            meta.threads = meta_common.threads;
            const auto curve = mg::run_bandit_meta_experiment(meta);
            auto out = open_output(meta_common.out);
            mg::write_regret_csv(out, curve.rows);
            finish(out, meta_common.out);
            write_config_echo(*meta_cmd, meta_common.out);
        } else if (game_cmd->parsed()) {
            game.seed = game_common.seed;
            game.threads = game_common.threads;
            const auto result = mg::run_robust_game_experiment(game);
            auto out = open_output(game_common.out);
            mg::write_robustgame_csv(out, result.rows);
            finish(out, game_common.out);
            write_config_echo(*game_cmd, game_common.out);
        } else if (trace_cmd->parsed()) {
            const auto base = mg::RewardTable::bandit(trace_reward);
            std::vector<std::vector<mg::TraceRow>> traces;
            for (double alpha : trace_alphas)
                for (double b : trace_scales)
                    for (double c : trace_shifts) traces.push_back(mg::trace_robust_set_2arm(base, alpha, trace_grid, b, c));
            const std::filesystem::path out_path(trace_common.out);
            if (traces.size() == 1) {
                auto out = open_output(trace_common.out);
                mg::write_trace_csv(out, traces.front());
                finish(out, trace_common.out);
            } else {
                for (std::size_t k = 0; k < traces.size(); ++k) {
                    auto path = out_path;
                    path.replace_filename(out_path.stem().string() + "-" + std::to_string(k) +
                                          out_path.extension().string());
                    auto out = open_output(path.string());
                    mg::write_trace_csv(out, traces[k]);
                    finish(out, path.string());
                }
            }
            write_config_echo(*trace_cmd, trace_common.out);
        } else if (lb_cmd->parsed()) {
            lb.seed = lb_common.seed;
            lb.threads = lb_common.threads;
            lb.shift_mode = lb_shift == "global" ? mg::ShiftMode::global : mg::ShiftMode::per_member;
            const auto result = mg::run_lowerbound_suite(lb);
            auto out = open_output(lb_common.out);
            mg::write_lowerbound_csv(out, result.rows);
            finish(out, lb_common.out);
            write_config_echo(*lb_cmd, lb_common.out);
        } else if (self_cmd->parsed()) {
            const auto results = mg::run_selftest(self);
            bool all = true;
            for (const auto& r : results) {
                std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.detail << ")\n";
                all = all && r.passed;
            }
            return all ? kExitOk : kExitNumerical;
        }
    } catch (const mg::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.is_usage_error() ? kExitConfig : kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitOk;
}
