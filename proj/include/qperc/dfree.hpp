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

/**
 * @file
 * Derivative-free training of a layered network of square real weight
 * matrices. Per step, for every layer independently from the same
 * pre-step state:
 *
 *   1. G_l     = sum_i |t_i^l><a_i^(l-1)|     (targets x layer inputs)
 *   2. F_l     = unitarize(G_l, mode), U_l the left SVD factor of G_l
 *   3. Delta_l = mean_i |U_l F_l a_i^(l-1)><a_i^(l-1)|   (interpretation A)
 *              = F_l                                      (interpretation B)
 *   4. W_l    <- (1 - eta) W_l + eta * M(Delta_l - W_l)
 *
 * Hidden-layer targets are the label pulled back through the exact
 * adjoints of the downstream unitarized layers — no gradient chain, so
 * the per-layer cost does not grow with depth. The module deliberately
 * exposes no derivative of the activation anywhere; activations are
 * consumed through forward evaluation only.
 *
 * eta = 1 is the plain update W <- M(Delta - W); smaller eta is the Euler
 * relaxation of the same rule (the h/tau of the dynamics formulation it
 * derives from) and is what makes the sampled XOR experiment settle.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "qperc/errors.hpp"
#include "qperc/linalg.hpp"
#include "qperc/measure.hpp"
#include "qperc/qstate.hpp"
#include "qperc/rng.hpp"
#include "qperc/unitarize.hpp"
#include "qperc/xor_task.hpp"

namespace qperc {

enum class UpdateInterpretation { A, B };

inline const char *to_string(UpdateInterpretation i) {
    return i == UpdateInterpretation::A ? "A" : "B";
}

struct LayeredNetwork {
    std::vector<DenseMatrix> layers; // all width x width, real entries
    int width = 3;
    UnitarizeMode unitarize_mode = UnitarizeMode::uv;
    OperatorMode operator_mode = OperatorMode::sigmoid;
    UpdateInterpretation interpretation = UpdateInterpretation::A;
    double eta = 1.0;

    [[nodiscard]] int depth() const { return static_cast<int>(layers.size()); }

    [[nodiscard]] WeightOperator weight_operator() const {
        switch (operator_mode) {
            case OperatorMode::sigmoid:
                return WeightOperator::sigmoid_op();
            case OperatorMode::projective:
                // H = I; the general projective(H) lives in the measure
                // module for callers that need a nontrivial operator.
                return WeightOperator::projective_op(DenseMatrix::identity(width));
            default:
                return WeightOperator::identity_op();
        }
    }
};

/// Fresh network with entries drawn uniformly from (0, 1).
inline LayeredNetwork init_network(int width, int depth, std::uint64_t seed,
                                   UnitarizeMode umode = UnitarizeMode::uv,
                                   OperatorMode omode = OperatorMode::sigmoid,
                                   UpdateInterpretation interp = UpdateInterpretation::A,
                                   double eta = 1.0) {
    if (width < 1 || depth < 1) {
        throw DomainError("init_network: width and depth must be positive");
    }
    if (!(eta > 0.0) || eta > 1.0) {
        throw DomainError("init_network: eta must lie in (0, 1]");
    }
    LayeredNetwork net;
    net.width = width;
    net.unitarize_mode = umode;
    net.operator_mode = omode;
    net.interpretation = interp;
    net.eta = eta;
    std::mt19937_64 rng(seed);
    for (int l = 0; l < depth; ++l) {
        DenseMatrix w = DenseMatrix::zero(width, width);
        for (cdouble &z : w.data) {
            z = cdouble{uniform_unit(rng), 0.0};
        }
        net.layers.push_back(std::move(w));
    }
    return net;
}

/// Bias-augmented input [a, b, 1, 0, ...] / norm, zero-padded to width d.
inline Ket encode_input(int a, int b, int d) {
    if (d < 3) {
        throw DomainError("encode_input: width must be at least 3, got " +
                          std::to_string(d));
    }
    std::vector<cdouble> amp(static_cast<std::size_t>(d), cdouble{0.0, 0.0});
    amp[0] = static_cast<double>(a);
    amp[1] = static_cast<double>(b);
    amp[2] = 1.0;
    return normalize(Ket{std::move(amp)});
}

inline Ket encode_label(int y, int d) { return basis_ket(y, d); }

/// Forward activations a^0..a^L under the sigma chain a^l = sigma(W_l a^(l-1)).
inline std::vector<Ket> activations(const LayeredNetwork &net, const Ket &x) {
    if (x.dim() != net.width) {
        throw DomainError("activations: input dim " + std::to_string(x.dim()) +
                          " does not match width " + std::to_string(net.width));
    }
    std::vector<Ket> acts;
    acts.reserve(static_cast<std::size_t>(net.depth()) + 1);
    acts.push_back(x);
    for (const DenseMatrix &w : net.layers) {
        acts.push_back(sigmoid_map(matvec(w, acts.back())));
    }
    return acts;
}

/// Per-layer targets: the label for the last layer, and for layer l the
/// label pulled back through the adjoints of unitarize(W_k) for all k > l.
inline std::vector<Ket> layer_targets(const LayeredNetwork &net, const TrainingPair &pair) {
    const int depth = net.depth();
    std::vector<Ket> targets(static_cast<std::size_t>(depth), pair.label);
    for (int l = depth - 2; l >= 0; --l) {
        const UnitaryMap f = unitarize(net.layers[static_cast<std::size_t>(l + 1)],
                                       net.unitarize_mode);
        targets[static_cast<std::size_t>(l)] =
            matvec(adjoint(f.matrix), targets[static_cast<std::size_t>(l + 1)]);
    }
    return targets;
}

/**
 * One training step on a batch. `order` fixes which layer is processed
 * first; because every layer reads only the pre-step state the result is
 * identical for every permutation, and a test holds this to bit equality.
 */
inline LayeredNetwork dfree_step(const LayeredNetwork &net,
                                 const std::vector<TrainingPair> &batch,
                                 const std::vector<int> &order) {
    if (batch.empty()) {
        throw DomainError("dfree_step: empty batch");
    }
    const int depth = net.depth();
    const std::size_t n = batch.size();

    std::vector<std::vector<Ket>> acts;
    std::vector<std::vector<Ket>> targets;
    acts.reserve(n);
    targets.reserve(n);
    for (const TrainingPair &pair : batch) {
        if (pair.label.dim() != net.width) {
            throw DomainError("dfree_step: label dim does not match width");
        }
        acts.push_back(activations(net, pair.input));
        targets.push_back(layer_targets(net, pair));
    }

    const WeightOperator op = net.weight_operator();
    LayeredNetwork out = net;
    for (int idx = 0; idx < depth; ++idx) {
        const int l = order[static_cast<std::size_t>(idx)];
        const std::size_t lu = static_cast<std::size_t>(l);

        DenseMatrix g = DenseMatrix::zero(net.width, net.width);
        for (std::size_t i = 0; i < n; ++i) {
            g = add(g, outer(targets[i][lu], acts[i][lu]));
        }
        const SvdResult factor = svd(g);
        const UnitaryMap f_cand = unitarize_from_svd(factor, net.unitarize_mode);

        DenseMatrix delta;
        if (net.interpretation == UpdateInterpretation::A) {
            delta = DenseMatrix::zero(net.width, net.width);
            for (std::size_t i = 0; i < n; ++i) {
                const Ket y_hat = matvec(f_cand.matrix, acts[i][lu]);
                delta = add(delta, outer(matvec(factor.U, y_hat), acts[i][lu]));
            }
            delta = scale(delta, 1.0 / static_cast<double>(n));
        } else {
            delta = f_cand.matrix;
        }

        const DenseMatrix updated = op.apply(subtract(delta, net.layers[lu]));
        if (net.eta == 1.0) {
            out.layers[lu] = updated;
        } else {
            out.layers[lu] = add(scale(net.layers[lu], 1.0 - net.eta),
                                 scale(updated, net.eta));
        }
    }
    return out;
}

inline LayeredNetwork dfree_step(const LayeredNetwork &net,
                                 const std::vector<TrainingPair> &batch) {
    std::vector<int> order(static_cast<std::size_t>(net.depth()));
    std::iota(order.begin(), order.end(), 0);
    return dfree_step(net, batch, order);
}

/// Component 1 of the final sigma-chain activation.
inline double score(const LayeredNetwork &net, int a, int b) {
    const std::vector<Ket> acts = activations(net, encode_input(a, b, net.width));
    return acts.back().amp[1].real();
}

/// 1 when the score clears the 0.5 cutoff (boundary counts as 1).
inline int predict(const LayeredNetwork &net, int a, int b) {
    return score(net, a, b) >= 0.5 ? 1 : 0;
}

/// Mean L1 distance between score and label over the full truth table.
inline double xor_loss(const LayeredNetwork &net) {
    double total = 0.0;
    for (const XorSample &s : kXorTable) {
        total += std::abs(score(net, s.a, s.b) - static_cast<double>(s.label));
    }
    return total / static_cast<double>(kXorTable.size());
}

struct IterationRecord {
    int iteration = 0; // 1-based, contiguous
    double train_error = 0.0;
    double test_error = 0.0;
    double loss = 0.0;
    int accuracy = 0; // prediction correct on the test instance
};

struct TrainResult {
    LayeredNetwork net;
    std::vector<IterationRecord> log;
};

/**
 * The sampled protocol: per iteration draw a training pair, take one
 * dfree_step on it, draw an independent test pair, log errors/loss/accuracy.
 * Fully deterministic given the sampler's seed.
 */
inline TrainResult train(LayeredNetwork net, XorSampler &sampler, int iters) {
    if (iters < 0) {
        throw DomainError("train: negative iteration count");
    }
    TrainResult result;
    result.log.reserve(static_cast<std::size_t>(iters));
    for (int t = 1; t <= iters; ++t) {
        const XorSample train_sample = sampler.next();
        const TrainingPair pair{encode_input(train_sample.a, train_sample.b, net.width),
                                encode_label(train_sample.label, net.width)};
        net = dfree_step(net, {pair});

        const XorSample test_sample = sampler.next();
        IterationRecord rec;
        rec.iteration = t;
        rec.train_error = std::abs(score(net, train_sample.a, train_sample.b) -
                                   static_cast<double>(train_sample.label));
        rec.test_error = std::abs(score(net, test_sample.a, test_sample.b) -
                                  static_cast<double>(test_sample.label));
        rec.loss = xor_loss(net);
        rec.accuracy = predict(net, test_sample.a, test_sample.b) == test_sample.label ? 1 : 0;
        result.log.push_back(rec);
    }
    result.net = std::move(net);
    return result;
}

} // namespace qperc
