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

// Experiment orchestration: run the two XOR trainers over the configured
// seeds, stream every iteration record into one flat CSV, and reduce the
// logs to the summary statistics the acceptance criteria are stated in.
//
// Definitions used throughout (and in the acceptance harness):
//   sustained accuracy  = accuracy 1 on five consecutive test draws;
//                         first_sustained is the iteration starting the
//                         first such window, or iters + 1 when none.
//   loss plateau        = every per-iteration loss change beyond
//                         iteration 5 is below 1e-2 in magnitude.
//   plateau onset       = the iteration of the last loss change with
//                         magnitude >= 1e-2, or 1 when there is none.

#pragma once

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "qperc/baseline.hpp"
#include "qperc/config.hpp"
#include "qperc/dfree.hpp"
#include "qperc/errors.hpp"
#include "qperc/plot.hpp"
#include "qperc/xor_task.hpp"

namespace qperc {

inline constexpr int kSustainedWindow = 5;
inline constexpr double kPlateauTol = 1e-2;
inline constexpr int kPlateauFrom = 6; // first iteration whose loss step must be small

inline int first_sustained(const std::vector<IterationRecord> &log) {
    const int n = static_cast<int>(log.size());
    for (int t = 0; t + kSustainedWindow - 1 < n; ++t) {
        bool ok = true;
        for (int k = 0; k < kSustainedWindow; ++k) {
            if (log[static_cast<std::size_t>(t + k)].accuracy != 1) {
                ok = false;
                break;
            }
        }
        if (ok) return log[static_cast<std::size_t>(t)].iteration;
    }
    return n + 1;
}

inline bool loss_plateau_ok(const std::vector<IterationRecord> &log) {
    for (std::size_t t = 1; t < log.size(); ++t) {
        if (log[t].iteration < kPlateauFrom) continue;
        if (std::abs(log[t].loss - log[t - 1].loss) >= kPlateauTol) return false;
    }
    return true;
}

inline int plateau_onset(const std::vector<IterationRecord> &log) {
    int onset = 1;
    for (std::size_t t = 1; t < log.size(); ++t) {
        if (std::abs(log[t].loss - log[t - 1].loss) >= kPlateauTol) {
            onset = log[t].iteration;
        }
    }
    return onset;
}

/// Median of a small integer sample; the upper median for even sizes.
inline int median_int(std::vector<int> values) {
    if (values.empty()) throw DomainError("median_int: empty sample");
    std::sort(values.begin(), values.end());
    return values[values.size() / 2];
}

struct MethodSummary {
    std::string method;
    int seed_count = 0;
    int converged = 0; // seeds with a sustained-accuracy window
    int median_first_sustained = 0;
    int median_first_sustained_converged = 0; // over converging seeds only; 0 if none
    int plateau_count = 0;
    int median_plateau_onset = 0;
};

struct ExperimentSummary {
    std::vector<MethodSummary> methods;
    std::string interpretation; // which reading produced the dfree rows
};

namespace detail {

inline MethodSummary summarize(const std::string &method,
                               const std::vector<std::vector<IterationRecord>> &logs) {
    MethodSummary s;
    s.method = method;
    s.seed_count = static_cast<int>(logs.size());
    std::vector<int> firsts;
    std::vector<int> firsts_converged;
    std::vector<int> onsets;
    for (const auto &log : logs) {
        const int f = first_sustained(log);
        firsts.push_back(f);
        if (f <= static_cast<int>(log.size())) {
            ++s.converged;
            firsts_converged.push_back(f);
        }
        if (loss_plateau_ok(log)) ++s.plateau_count;
        onsets.push_back(plateau_onset(log));
    }
    s.median_first_sustained = median_int(firsts);
    s.median_first_sustained_converged =
        firsts_converged.empty() ? 0 : median_int(firsts_converged);
    s.median_plateau_onset = median_int(onsets);
    return s;
}

inline void append_rows(std::string &csv, const char *method, std::uint64_t seed,
                        const std::vector<IterationRecord> &log) {
    char buf[256];
    for (const IterationRecord &rec : log) {
        std::snprintf(buf, sizeof buf, "%s,%llu,%d,%.17g,%.17g,%.17g,%d\n", method,
                      static_cast<unsigned long long>(seed), rec.iteration,
                      rec.train_error, rec.test_error, rec.loss, rec.accuracy);
        csv += buf;
    }
}

} // namespace detail

/// Train one derivative-free run exactly as the experiment does.
inline TrainResult run_dfree_seed(const ExperimentConfig &config, std::uint64_t seed) {
    LayeredNetwork net =
        init_network(config.width, config.depth, seed, config.unitarize_mode,
                     config.operator_mode, config.interpretation, config.eta);
    XorSampler sampler(seed);
    return train(std::move(net), sampler, config.iters);
}

/// Train one backprop run exactly as the experiment does.
inline SgdResult run_backprop_seed(const ExperimentConfig &config, std::uint64_t seed) {
    MlpParams params = init_mlp(seed);
    XorSampler sampler(seed);
    return sgd_train(std::move(params), sampler, config.iters, config.lr);
}

/// Run the configured methods over all seeds, write the CSV, and return
/// the summary. Output is buffered and written in (method, seed) order,
/// dfree before backprop, so identical configs give identical bytes.
inline ExperimentSummary run_experiment(const ExperimentConfig &config) {
    validate(config);

    std::string csv = kCsvHeader;
    csv += "\n";
    ExperimentSummary summary;
    summary.interpretation = to_string(config.interpretation);

    if (config.method == Method::dfree || config.method == Method::both) {
        std::vector<std::vector<IterationRecord>> logs;
        for (const std::uint64_t seed : config.seeds) {
            TrainResult res = run_dfree_seed(config, seed);
            detail::append_rows(csv, "dfree", seed, res.log);
            logs.push_back(std::move(res.log));
        }
        summary.methods.push_back(detail::summarize("dfree", logs));
    }
    if (config.method == Method::backprop || config.method == Method::both) {
        std::vector<std::vector<IterationRecord>> logs;
        for (const std::uint64_t seed : config.seeds) {
            SgdResult res = run_backprop_seed(config, seed);
            detail::append_rows(csv, "backprop", seed, res.log);
            logs.push_back(std::move(res.log));
        }
        summary.methods.push_back(detail::summarize("backprop", logs));
    }

    std::ofstream out(config.csv_path, std::ios::binary);
    if (!out) {
        throw IoError("run_experiment: cannot open '" + config.csv_path +
                      "' for writing");
    }
    out << csv;
    if (!out) throw IoError("run_experiment: write to '" + config.csv_path + "' failed");
    return summary;
}

inline std::string format_summary(const ExperimentSummary &summary) {
    std::string text;
    char buf[256];
    for (const MethodSummary &m : summary.methods) {
        std::snprintf(buf, sizeof buf,
                      "%s: seeds %d, sustained-accuracy %d/%d, median first sustained "
                      "%d, loss plateau %d/%d, median plateau onset %d",
                      m.method.c_str(), m.seed_count, m.converged, m.seed_count,
                      m.median_first_sustained, m.plateau_count, m.seed_count,
                      m.median_plateau_onset);
        text += buf;
        if (m.method == "dfree") {
            text += " (interpretation ";
            text += summary.interpretation;
            text += ")";
        }
        text += "\n";
    }
    return text;
}

} // namespace qperc
