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
 * Perceptron-map construction: accumulate training pairs into the weight
 * sum W = sum_i |y_i><x_i|, lift it to a certified unitary, and apply the
 * resulting map.
 *
 * Two unitarization readings are supported and recorded in every
 * experiment config:
 *  - uv: the full polar factor U V† (substituting the singular values
 *    with ones);
 *  - u:  the left singular factor alone, under the deterministic phase
 *    convention of the SVD.
 */

#pragma once

#include <string>
#include <vector>

#include "qperc/errors.hpp"
#include "qperc/linalg.hpp"
#include "qperc/qstate.hpp"

namespace qperc {

enum class UnitarizeMode { uv, u };

inline const char *to_string(UnitarizeMode m) {
    return m == UnitarizeMode::uv ? "uv" : "u";
}

struct TrainingPair {
    Ket input; // |x_i>
    Ket label; // |y_i>
};

/// W = sum_i outer(|y_i>, |x_i|). All pairs must share the same input and
/// label dimensions.
inline DenseMatrix accumulate(const std::vector<TrainingPair> &pairs) {
    if (pairs.empty()) {
        throw DomainError("accumulate: empty training set");
    }
    const int in_dim = pairs.front().input.dim();
    const int out_dim = pairs.front().label.dim();
    DenseMatrix w = DenseMatrix::zero(out_dim, in_dim);
    for (const TrainingPair &p : pairs) {
        if (p.input.dim() != in_dim || p.label.dim() != out_dim) {
            throw DomainError("accumulate: mismatched pair dimensions (" +
                              std::to_string(p.label.dim()) + "x" +
                              std::to_string(p.input.dim()) + " vs " +
                              std::to_string(out_dim) + "x" + std::to_string(in_dim) + ")");
        }
        for (int i = 0; i < out_dim; ++i) {
            for (int j = 0; j < in_dim; ++j) {
                w.at(i, j) += p.label.amp[static_cast<std::size_t>(i)] *
                              std::conj(p.input.amp[static_cast<std::size_t>(j)]);
            }
        }
    }
    return w;
}

/// Build the unitary from an already-computed SVD. Exposed so a caller
/// that needs both the factors and the map (the trainer does) runs one
/// Jacobi pass, keeping its numbers bit-identical to unitarize().
inline UnitaryMap unitarize_from_svd(const SvdResult &r, UnitarizeMode mode) {
    if (mode == UnitarizeMode::uv) {
        return UnitaryMap::certify(matmul(r.U, adjoint(r.V)));
    }
    return UnitaryMap::certify(r.U);
}

inline UnitaryMap unitarize(const DenseMatrix &w_hat, UnitarizeMode mode) {
    if (!w_hat.square()) {
        throw DomainError("unitarize: weight matrix must be square, got " +
                          std::to_string(w_hat.rows) + "x" + std::to_string(w_hat.cols));
    }
    return unitarize_from_svd(svd(w_hat), mode);
}

/// Y = F|x>.
inline Ket forward(const UnitaryMap &f_hat, const Ket &x) {
    if (!f_hat.certified) {
        throw DomainError("forward: uncertified unitary map");
    }
    if (x.dim() != f_hat.dim()) {
        throw DomainError("forward: dimension mismatch, ket " +
                          std::to_string(x.dim()) + " vs map " +
                          std::to_string(f_hat.dim()));
    }
    Ket y = matvec(f_hat.matrix, x);
    y.normalized = x.normalized; // unitaries preserve the L2 norm
    return y;
}

} // namespace qperc
