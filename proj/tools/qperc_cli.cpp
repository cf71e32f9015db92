// Copyright 2026 The qperc developers

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end.
//
// Exit codes: 0 success, 2 configuration error (bad flags, bad config
// file, bad domain arguments), 3 numeric error, 4 I/O error.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qperc/config.hpp"
#include "qperc/errors.hpp"
#include "qperc/experiment.hpp"
#include "qperc/persist.hpp"
#include "qperc/plot.hpp"
#include "qperc/rng.hpp"
#include "qperc/speedup.hpp"
#include "qperc/stochastic.hpp"

namespace {

using namespace qperc;

// Flag bundle shared by subcommands that build an ExperimentConfig.
struct ConfigFlags {
    std::string config_path;
    std::string method;
    std::string unitarize_mode;
    std::string operator_mode;
    std::string interpretation;
    int iters = -1;
    long long seed = -1;
    double eta = -1.0;
    double lr = -1.0;
    int width = -1;
    int depth = -1;
    std::string out;
};

void add_config_flags(CLI::App *cmd, ConfigFlags &flags) {
    cmd->add_option("--config", flags.config_path, "JSON config file to start from");
    cmd->add_option("--method", flags.method, "dfree, backprop, or both");
    cmd->add_option("--mode", flags.unitarize_mode, "unitarize mode: uv or u");
    cmd->add_option("--op-mode", flags.operator_mode,
                    "weight operator: sigmoid or projective");
    cmd->add_option("--interp", flags.interpretation, "update interpretation: A or B");
    cmd->add_option("--iters", flags.iters, "training iterations per seed");
    cmd->add_option("--seed", flags.seed, "single seed (replaces the seed list)");
    cmd->add_option("--eta", flags.eta, "derivative-free relaxation rate in (0, 1]");
    cmd->add_option("--lr", flags.lr, "backprop learning rate");
    cmd->add_option("--width", flags.width, "quantum-side width (>= 3)");
    cmd->add_option("--depth", flags.depth, "derivative-free layer count");
    cmd->add_option("--out", flags.out, "output CSV path");
}

ExperimentConfig resolve_config(const ConfigFlags &flags) {
    ExperimentConfig config =
        flags.config_path.empty() ? default_config() : load_config(flags.config_path);
    if (!flags.method.empty()) config.method = detail::parse_method(flags.method);
    if (!flags.unitarize_mode.empty())
        config.unitarize_mode = detail::parse_unitarize_mode(flags.unitarize_mode);
    if (!flags.operator_mode.empty())
        config.operator_mode = detail::parse_operator_mode(flags.operator_mode);
    if (!flags.interpretation.empty())
        config.interpretation = detail::parse_interpretation(flags.interpretation);
    if (flags.iters >= 0) config.iters = flags.iters;
    if (flags.seed >= 0) config.seeds = {static_cast<std::uint64_t>(flags.seed)};
    if (flags.eta >= 0.0) config.eta = flags.eta;
    if (flags.lr >= 0.0) config.lr = flags.lr;
    if (flags.width >= 0) config.width = flags.width;
    if (flags.depth >= 0) config.depth = flags.depth;
    if (!flags.out.empty()) config.csv_path = flags.out;
    validate(config);
    return config;
}

LogBase parse_log_base(const std::string &s) {
    if (s == "2") return LogBase::two;
    if (s == "e") return LogBase::e;
    if (s == "10") return LogBase::ten;
    throw ConfigError("speedup: unknown log base '" + s + "' (use 2, e, or 10)");
}

std::vector<SeriesSpec> parse_series(const std::string &text) {
    std::vector<SeriesSpec> specs;
    std::string item;
    std::istringstream stream(text);
    while (std::getline(stream, item, ',')) {
        const std::size_t colon = item.find(':');
        if (colon == std::string::npos || colon == 0 || colon + 1 == item.size()) {
            throw ConfigError("plot: series '" + item +
                              "' is not of the form method:metric");
        }
        specs.push_back({item.substr(0, colon), item.substr(colon + 1)});
    }
    if (specs.empty()) throw ConfigError("plot: no series given");
    return specs;
}

UnitaryMap demo_unitary(int dim, std::uint64_t seed) {
    if (dim == 2) {
        const double r = 1.0 / std::sqrt(2.0);
        DenseMatrix m = DenseMatrix::zero(2, 2);
        m.at(0, 0) = r;
        m.at(0, 1) = r;
        m.at(1, 0) = r;
        m.at(1, 1) = -r;
        return UnitaryMap::certify(m);
    }
    std::mt19937_64 rng(seed);
    DenseMatrix m = DenseMatrix::zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            m.at(i, j) = cdouble{uniform_in(rng, -1.0, 1.0), uniform_in(rng, -1.0, 1.0)};
        }
    }
    return polar_unitary(m);
}

void write_text_file(const std::string &path, const std::string &content,
                     const char *op) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(std::string(op) + ": cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw IoError(std::string(op) + ": write to '" + path + "' failed");
}

int run(int argc, char **argv) {
    CLI::App app{"qperc: derivative-free quantum-perceptron experiments"};
    app.require_subcommand(1);

    // ------------------------------------------------------------- xor
    ConfigFlags xor_flags;
    bool print_config = false;
    CLI::App *cmd_xor = app.add_subcommand("xor", "run the XOR experiment");
    add_config_flags(cmd_xor, xor_flags);
    cmd_xor->add_flag("--print-config", print_config,
                      "print the resolved config JSON and exit");

    // ---------------------------------------------------------- markov
    int markov_dim = 2;
    int markov_start = 0;
    int markov_steps = 10;
    long long markov_seed = 1;
    std::string markov_out = "markov.csv";
    CLI::App *cmd_markov = app.add_subcommand("markov", "simulate a unitary-driven chain");
    cmd_markov->add_option("--dim", markov_dim, "state count (2 uses the balanced unitary)");
    cmd_markov->add_option("--start", markov_start, "start state index");
    cmd_markov->add_option("--steps", markov_steps, "number of transitions");
    cmd_markov->add_option("--seed", markov_seed, "emulation seed");
    cmd_markov->add_option("--out", markov_out, "trajectory CSV path");

    // -------------------------------------------------------- dynamics
    int dyn_dim = 3;
    int dyn_steps = 100;
    double dyn_h = 0.1;
    double dyn_tau = 1.0;
    long long dyn_seed = 1;
    bool dyn_zero_w = false;
    std::string dyn_out = "dynamics.csv";
    CLI::App *cmd_dyn = app.add_subcommand("dynamics", "integrate the neuron relaxation");
    cmd_dyn->add_option("--dim", dyn_dim, "neuron count");
    cmd_dyn->add_option("--steps", dyn_steps, "Euler steps");
    cmd_dyn->add_option("--dt", dyn_h, "step size");
    cmd_dyn->add_option("--tau", dyn_tau, "time constant (shared by all neurons)");
    cmd_dyn->add_option("--seed", dyn_seed, "seed for couplings and start state");
    cmd_dyn->add_flag("--zero-w", dyn_zero_w, "use zero couplings");
    cmd_dyn->add_option("--out", dyn_out, "trajectory CSV path");

    // --------------------------------------------------------- speedup
    long long speedup_n = 0;
    std::string speedup_base = "2";
    CLI::App *cmd_speedup = app.add_subcommand("speedup", "print N^2 / log N");
    cmd_speedup->add_option("--n", speedup_n, "problem size N")->required();
    cmd_speedup->add_option("--base", speedup_base, "log base: 2, e, or 10");

    // ------------------------------------------------------------ plot
    std::string plot_csv;
    std::string plot_series = "dfree:loss,backprop:loss";
    std::string plot_out = "plot.svg";
    CLI::App *cmd_plot = app.add_subcommand("plot", "render result CSV series as SVG");
    cmd_plot->add_option("--csv", plot_csv, "input result CSV")->required();
    cmd_plot->add_option("--series", plot_series,
                         "comma list of method:metric pairs");
    cmd_plot->add_option("--out", plot_out, "output SVG path");

    // ------------------------------------------------------------- net
    CLI::App *cmd_net = app.add_subcommand("net", "save or load a network");
    cmd_net->require_subcommand(1);
    ConfigFlags net_flags;
    CLI::App *cmd_net_save = cmd_net->add_subcommand("save", "train and save a network");
    add_config_flags(cmd_net_save, net_flags);
    std::string net_in;
    CLI::App *cmd_net_load = cmd_net->add_subcommand("load", "load and describe a network");
    cmd_net_load->add_option("--in", net_in, "network JSON path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (cmd_xor->parsed()) {
        const ExperimentConfig config = resolve_config(xor_flags);
        if (print_config) {
            std::fputs(config_to_string(config).c_str(), stdout);
            return 0;
        }
        const ExperimentSummary summary = run_experiment(config);
        std::fputs(format_summary(summary).c_str(), stdout);
        std::printf("wrote %s\n", config.csv_path.c_str());
        return 0;
    }

    if (cmd_markov->parsed()) {
        if (markov_dim < 2) throw ConfigError("markov: --dim must be at least 2");
        const UnitaryMap u = demo_unitary(markov_dim, static_cast<std::uint64_t>(markov_seed));
        const std::vector<int> traj = simulate_chain(
            u, markov_start, markov_steps, static_cast<std::uint64_t>(markov_seed));
        std::string csv = "step,state\n";
        char buf[64];
        for (std::size_t s = 0; s < traj.size(); ++s) {
            std::snprintf(buf, sizeof buf, "%zu,%d\n", s, traj[s]);
            csv += buf;
        }
        write_text_file(markov_out, csv, "markov");
        // The physical construction needs no random source; this
        // classical emulation does, so the seed is part of the record.
        std::printf("markov: classical emulation, seed %lld stands in for "
                    "measurement randomness; wrote %s\n",
                    markov_seed, markov_out.c_str());
        return 0;
    }

    if (cmd_dyn->parsed()) {
        if (dyn_dim < 1) throw ConfigError("dynamics: --dim must be positive");
        DynamicsState state;
        state.h = dyn_h;
        state.z.resize(static_cast<std::size_t>(dyn_dim));
        state.tau.assign(static_cast<std::size_t>(dyn_dim), dyn_tau);
        state.w.assign(static_cast<std::size_t>(dyn_dim) * static_cast<std::size_t>(dyn_dim),
                       0.0);
        std::mt19937_64 rng(static_cast<std::uint64_t>(dyn_seed));
        for (double &z : state.z) z = uniform_unit(rng);
        if (!dyn_zero_w) {
            for (double &w : state.w) w = uniform_in(rng, -1.0, 1.0);
        }
        const auto traj = integrate_dynamics(state, dyn_steps);

        std::string csv = "step";
        char buf[64];
        for (int i = 0; i < dyn_dim; ++i) {
            std::snprintf(buf, sizeof buf, ",z%d", i);
            csv += buf;
        }
        csv += "\n";
        for (std::size_t s = 0; s < traj.size(); ++s) {
            std::snprintf(buf, sizeof buf, "%zu", s);
            csv += buf;
            for (const double z : traj[s]) {
                std::snprintf(buf, sizeof buf, ",%.17g", z);
                csv += buf;
            }
            csv += "\n";
        }
        write_text_file(dyn_out, csv, "dynamics");
        std::printf("dynamics: %d neurons, %d steps, h/tau %.17g; wrote %s\n", dyn_dim,
                    dyn_steps, dyn_h / dyn_tau, dyn_out.c_str());
        return 0;
    }

    if (cmd_speedup->parsed()) {
        const double s = speedup_report(speedup_n, parse_log_base(speedup_base));
        std::printf("%.17g\n", s);
        return 0;
    }

    if (cmd_plot->parsed()) {
        emit_plot(plot_csv, parse_series(plot_series), plot_out);
        std::printf("wrote %s\n", plot_out.c_str());
        return 0;
    }

    if (cmd_net_save->parsed()) {
        ExperimentConfig config = resolve_config(net_flags);
        if (net_flags.out.empty()) {
            throw ConfigError("net save: --out is required");
        }
        const std::uint64_t seed = config.seeds.front();
        LayeredNetwork net;
        if (config.iters > 0) {
            net = run_dfree_seed(config, seed).net;
        } else {
            net = init_network(config.width, config.depth, seed, config.unitarize_mode,
                               config.operator_mode, config.interpretation, config.eta);
        }
        save_network(net, net_flags.out);
        std::printf("saved network (width %d, depth %d, seed %llu, %d iterations) to %s\n",
                    net.width, net.depth(), static_cast<unsigned long long>(seed),
                    config.iters, net_flags.out.c_str());
        return 0;
    }

    if (cmd_net_load->parsed()) {
        const LayeredNetwork net = load_network(net_in);
        std::printf("layered network: width %d, depth %d, unitarize %s, operator %s, "
                    "interpretation %s, eta %.17g\n",
                    net.width, net.depth(), to_string(net.unitarize_mode),
                    to_string(net.operator_mode), to_string(net.interpretation), net.eta);
        return 0;
    }

    return 2; // unreachable: require_subcommand enforces one branch
}

} // namespace

int main(int argc, char **argv) {
    try {
        return run(argc, argv);
    } catch (const qperc::ConfigError &e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const qperc::NumericError &e) {
        std::fprintf(stderr, "numeric error: %s\n", e.what());
        return 3;
    } catch (const qperc::IoError &e) {
        std::fprintf(stderr, "i/o error: %s\n", e.what());
        return 4;
    } catch (const qperc::DomainError &e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}
