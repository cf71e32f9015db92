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

// Classical comparison arm: a small sigmoid MLP trained by stochastic
// gradient descent on the L1 loss. Everything here is real-valued and
// deliberately plain — it is the control against which the derivative-free
// trainer is measured, so it must be beyond suspicion rather than clever.
//
// Weights are stored row-major per layer, row j holding the fan-in of
// output unit j. The default architecture is 2-2-1 on raw bit inputs.

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qperc/dfree.hpp"
#include "qperc/errors.hpp"
#include "qperc/measure.hpp"
#include "qperc/rng.hpp"
#include "qperc/xor_task.hpp"

namespace qperc {

/// Layered real weights and biases; widths[0] is the input dimension.
struct MlpParams {
    std::vector<int> widths;                   // e.g. {2, 2, 1}
    std::vector<std::vector<double>> weights;  // layer l: widths[l+1] x widths[l], row-major
    std::vector<std::vector<double>> biases;   // layer l: widths[l+1]

    int layer_count() const { return static_cast<int>(weights.size()); }
};

/// Per-layer post-activation values from one forward pass; activations[0]
/// is the input itself and output is the single last component.
struct MlpActivations {
    std::vector<std::vector<double>> activations;
    double output = 0.0;
};

/// Gradient of the L1 loss with the same shapes as MlpParams.
struct MlpGradient {
    std::vector<std::vector<double>> weights;
    std::vector<std::vector<double>> biases;
};

/// L1 subgradient convention: sign(0) = 0, so a perfect fit is stationary.
inline double l1_sign(double r) {
    if (r > 0.0) return 1.0;
    if (r < 0.0) return -1.0;
    return 0.0;
}

inline MlpParams init_mlp(const std::vector<int> &widths, std::uint64_t seed) {
    if (widths.size() < 2) {
        throw DomainError("init_mlp: need at least an input and an output layer");
    }
    for (const int w : widths) {
        if (w < 1) throw DomainError("init_mlp: non-positive layer width");
    }
    if (widths.back() != 1) {
        throw DomainError("init_mlp: output layer must have width 1");
    }
    std::mt19937_64 rng(seed);
    MlpParams params;
    params.widths = widths;
    for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
        const int rows = widths[l + 1];
        const int cols = widths[l];
        std::vector<double> w(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
        for (double &v : w) v = uniform_in(rng, -1.0, 1.0);
        std::vector<double> b(static_cast<std::size_t>(rows));
        for (double &v : b) v = uniform_in(rng, -1.0, 1.0);
        params.weights.push_back(std::move(w));
        params.biases.push_back(std::move(b));
    }
    return params;
}

/// Default control network for the XOR experiment.
inline MlpParams init_mlp(std::uint64_t seed) { return init_mlp({2, 2, 1}, seed); }

inline MlpActivations mlp_forward(const MlpParams &params, const std::vector<double> &x) {
    if (static_cast<int>(x.size()) != params.widths.front()) {
        throw DomainError("mlp_forward: input dim " + std::to_string(x.size()) +
                          " does not match first width " +
                          std::to_string(params.widths.front()));
    }
    MlpActivations result;
    result.activations.push_back(x);
    for (int l = 0; l < params.layer_count(); ++l) {
        const int rows = params.widths[static_cast<std::size_t>(l) + 1];
        const int cols = params.widths[static_cast<std::size_t>(l)];
        const std::vector<double> &prev = result.activations.back();
        std::vector<double> next(static_cast<std::size_t>(rows));
        for (int j = 0; j < rows; ++j) {
            double z = params.biases[static_cast<std::size_t>(l)][static_cast<std::size_t>(j)];
            for (int k = 0; k < cols; ++k) {
                z += params.weights[static_cast<std::size_t>(l)]
                                   [static_cast<std::size_t>(j) * static_cast<std::size_t>(cols) +
                                    static_cast<std::size_t>(k)] *
                     prev[static_cast<std::size_t>(k)];
            }
            next[static_cast<std::size_t>(j)] = sigmoid(z);
        }
        result.activations.push_back(std::move(next));
    }
    result.output = result.activations.back().front();
    return result;
}

/// Reverse-mode gradient of |output - y|. The output-layer seed is
/// l1_sign(output - y); from there it is the textbook chain with
/// sigma'(z) recovered as a(1-a) from the stored activations.
inline MlpGradient mlp_grad(const MlpParams &params, const std::vector<double> &x, int y) {
    const MlpActivations fwd = mlp_forward(params, x);
    const int layers = params.layer_count();

    MlpGradient grad;
    grad.weights.resize(static_cast<std::size_t>(layers));
    grad.biases.resize(static_cast<std::size_t>(layers));

    // delta holds dLoss/dz for the current layer, walking backwards.
    std::vector<double> delta{l1_sign(fwd.output - static_cast<double>(y))};
    {
        const double a = fwd.output;
        delta[0] *= a * (1.0 - a);
    }
    for (int l = layers - 1; l >= 0; --l) {
        const int rows = params.widths[static_cast<std::size_t>(l) + 1];
        const int cols = params.widths[static_cast<std::size_t>(l)];
        const std::vector<double> &below = fwd.activations[static_cast<std::size_t>(l)];

        std::vector<double> gw(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
        for (int j = 0; j < rows; ++j) {
            for (int k = 0; k < cols; ++k) {
                gw[static_cast<std::size_t>(j) * static_cast<std::size_t>(cols) +
                   static_cast<std::size_t>(k)] =
                    delta[static_cast<std::size_t>(j)] * below[static_cast<std::size_t>(k)];
            }
        }
        grad.weights[static_cast<std::size_t>(l)] = std::move(gw);
        grad.biases[static_cast<std::size_t>(l)] = delta;

        if (l == 0) break;
        std::vector<double> prev_delta(static_cast<std::size_t>(cols), 0.0);
        for (int k = 0; k < cols; ++k) {
            double s = 0.0;
            for (int j = 0; j < rows; ++j) {
                s += params.weights[static_cast<std::size_t>(l)]
                                   [static_cast<std::size_t>(j) * static_cast<std::size_t>(cols) +
                                    static_cast<std::size_t>(k)] *
                     delta[static_cast<std::size_t>(j)];
            }
            const double a = below[static_cast<std::size_t>(k)];
            prev_delta[static_cast<std::size_t>(k)] = s * a * (1.0 - a);
        }
        delta = std::move(prev_delta);
    }
    return grad;
}

inline double mlp_output(const MlpParams &params, int a, int b) {
    return mlp_forward(params, {static_cast<double>(a), static_cast<double>(b)}).output;
}

inline int mlp_predict(const MlpParams &params, int a, int b) {
    return mlp_output(params, a, b) >= 0.5 ? 1 : 0;
}

/// Mean L1 error over the four-case truth table, the logged objective.
inline double mlp_loss(const MlpParams &params) {
    double total = 0.0;
    for (const XorSample &s : kXorTable) {
        total += std::abs(mlp_output(params, s.a, s.b) - static_cast<double>(s.label));
    }
    return total / static_cast<double>(kXorTable.size());
}

struct SgdResult {
    MlpParams params;
    std::vector<IterationRecord> log;
};

/// One SGD pass: per iteration sample a training pair, take one L1
/// gradient step at rate lr, then score an independently sampled test
/// pair. Mirrors the derivative-free trainer's protocol record for record
/// so the two CSV streams are directly comparable.
inline SgdResult sgd_train(MlpParams params, XorSampler &sampler, int iters, double lr) {
    if (iters < 0) throw DomainError("sgd_train: negative iteration count");
    if (lr < 0.0) throw DomainError("sgd_train: negative learning rate");

    SgdResult result;
    for (int t = 1; t <= iters; ++t) {
        const XorSample train_pair = sampler.next();
        const MlpGradient grad =
            mlp_grad(params, {static_cast<double>(train_pair.a),
                              static_cast<double>(train_pair.b)},
                     train_pair.label);
        for (std::size_t l = 0; l < params.weights.size(); ++l) {
            for (std::size_t i = 0; i < params.weights[l].size(); ++i) {
                params.weights[l][i] -= lr * grad.weights[l][i];
            }
            for (std::size_t i = 0; i < params.biases[l].size(); ++i) {
                params.biases[l][i] -= lr * grad.biases[l][i];
            }
        }

        const XorSample test_pair = sampler.next();
        IterationRecord rec;
        rec.iteration = t;
        rec.train_error =
            std::abs(mlp_output(params, train_pair.a, train_pair.b) -
                     static_cast<double>(train_pair.label));
        rec.test_error = std::abs(mlp_output(params, test_pair.a, test_pair.b) -
                                  static_cast<double>(test_pair.label));
        rec.loss = mlp_loss(params);
        rec.accuracy = mlp_predict(params, test_pair.a, test_pair.b) == test_pair.label ? 1 : 0;
        result.log.push_back(rec);
    }
    result.params = std::move(params);
    return result;
}

} // namespace qperc
