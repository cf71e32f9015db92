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
 * Measurable operators in both senses used by this library: hermitian
 * projective operators (Born measurement, expectation values) and the
 * elementwise sigmoid map the trainer applies to weight updates.
 *
 * sigmoid_map acts on real parts and returns real entries; downstream
 * training keeps weights real from then on. Degenerate eigenvalues are
 * grouped at tolerance 1e-10 and measured as one eigenspace.
 */

#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "qperc/errors.hpp"
#include "qperc/linalg.hpp"
#include "qperc/qstate.hpp"
#include "qperc/rng.hpp"

namespace qperc {

inline constexpr double kEigenGroupTol = 1e-10;

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

inline DenseMatrix sigmoid_map(const DenseMatrix &a) {
    DenseMatrix out = a;
    for (cdouble &z : out.data) {
        z = cdouble{sigmoid(z.real()), 0.0};
    }
    return out;
}

inline Ket sigmoid_map(const Ket &k) {
    Ket out = k;
    out.normalized = false;
    for (cdouble &z : out.amp) {
        z = cdouble{sigmoid(z.real()), 0.0};
    }
    return out;
}

/// Hermitian operator with its spectral decomposition computed up front.
struct MeasurableOperator {
    DenseMatrix matrix;
    std::vector<double> eigenvalues; // descending
    DenseMatrix eigenvectors;        // orthonormal columns, phase-fixed

    static MeasurableOperator from_matrix(const DenseMatrix &h) {
        MeasurableOperator m;
        m.matrix = h;
        EigResult eig = herm_eig(h); // rejects non-hermitian input
        m.eigenvalues = std::move(eig.eigenvalues);
        m.eigenvectors = std::move(eig.eigenvectors);
        return m;
    }

    [[nodiscard]] int dim() const { return matrix.rows; }
};

struct MeasurementOutcome {
    double eigenvalue = 0.0;
    Ket post_state{std::vector<cdouble>{cdouble{1.0, 0.0}}};
    double probability = 0.0;
};

namespace detail {

inline void require_normalized(const Ket &psi, const char *who) {
    if (std::abs(norm(psi) - 1.0) > 1e-10) {
        throw DomainError(std::string(who) + ": state is not normalized, ‖ψ‖ = " +
                          std::to_string(norm(psi)));
    }
}

} // namespace detail

/**
 * Projective Born measurement. Eigenvalues equal within 1e-10 are treated
 * as one eigenspace: its probability is the summed |<ξ_j|ψ>|² and the
 * post-state is the normalized projection of ψ onto the eigenspace. The
 * outcome is a deterministic function of the seed.
 */
inline MeasurementOutcome born_measure(const MeasurableOperator &m, const Ket &psi,
                                       std::mt19937_64 &rng) {
    detail::require_normalized(psi, "born_measure");
    if (psi.dim() != m.dim()) {
        throw DomainError("born_measure: dimension mismatch");
    }
    const int n = m.dim();

    std::vector<cdouble> coeff(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        cdouble c = 0.0;
        for (int i = 0; i < n; ++i) {
            c += std::conj(m.eigenvectors.at(i, j)) * psi.amp[static_cast<std::size_t>(i)];
        }
        coeff[static_cast<std::size_t>(j)] = c;
    }

    struct Group {
        int begin;
        int end; // half-open
        double probability;
    };
    std::vector<Group> groups;
    int j = 0;
    while (j < n) {
        int k = j + 1;
        while (k < n &&
               std::abs(m.eigenvalues[static_cast<std::size_t>(k)] -
                        m.eigenvalues[static_cast<std::size_t>(j)]) <= kEigenGroupTol) {
            ++k;
        }
        double p = 0.0;
        for (int t = j; t < k; ++t) {
            p += std::norm(coeff[static_cast<std::size_t>(t)]);
        }
        groups.push_back({j, k, p});
        j = k;
    }

    const double u = uniform_unit(rng);
    double cum = 0.0;
    int chosen = -1;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        cum += groups[g].probability;
        if (u < cum) {
            chosen = static_cast<int>(g);
            break;
        }
    }
    if (chosen < 0) {
        // Rounding pushed the cumulative sum below u; take the last group
        // that has any probability mass.
        for (int g = static_cast<int>(groups.size()) - 1; g >= 0; --g) {
            if (groups[static_cast<std::size_t>(g)].probability > 0.0) {
                chosen = g;
                break;
            }
        }
    }
    const Group &grp = groups[static_cast<std::size_t>(chosen)];

    std::vector<cdouble> proj(static_cast<std::size_t>(n), cdouble{0.0, 0.0});
    for (int t = grp.begin; t < grp.end; ++t) {
        for (int i = 0; i < n; ++i) {
            proj[static_cast<std::size_t>(i)] +=
                coeff[static_cast<std::size_t>(t)] * m.eigenvectors.at(i, t);
        }
    }
    MeasurementOutcome out;
    out.eigenvalue = m.eigenvalues[static_cast<std::size_t>(grp.begin)];
    out.probability = grp.probability;
    out.post_state = normalize(Ket{proj});
    return out;
}

/// <ψ|M|ψ>, guaranteed real for hermitian M up to rounding.
inline double expectation(const MeasurableOperator &m, const Ket &psi) {
    detail::require_normalized(psi, "expectation");
    if (psi.dim() != m.dim()) {
        throw DomainError("expectation: dimension mismatch");
    }
    const Ket mpsi = matvec(m.matrix, psi);
    return inner(psi, mpsi).real();
}

/**
 * The measurable operator as the trainer consumes it: a map on weight
 * matrices. `sigmoid` is the elementwise map; `projective` left-applies a
 * hermitian operator H; `identity` is the H = I special case, kept as its
 * own named mode because tests and configs use it directly.
 */
enum class OperatorMode { sigmoid, projective, identity };

inline const char *to_string(OperatorMode m) {
    switch (m) {
        case OperatorMode::sigmoid: return "sigmoid";
        case OperatorMode::projective: return "projective";
        default: return "identity";
    }
}

struct WeightOperator {
    OperatorMode mode = OperatorMode::sigmoid;
    DenseMatrix hermitian; // used by projective only

    static WeightOperator sigmoid_op() { return WeightOperator{OperatorMode::sigmoid, {}}; }

    static WeightOperator identity_op() { return WeightOperator{OperatorMode::identity, {}}; }

    static WeightOperator projective_op(const DenseMatrix &h) {
        herm_eig(h); // validation only: throws DomainError when not hermitian
        return WeightOperator{OperatorMode::projective, h};
    }

    [[nodiscard]] DenseMatrix apply(const DenseMatrix &x) const {
        switch (mode) {
            case OperatorMode::sigmoid:
                return sigmoid_map(x);
            case OperatorMode::projective:
                if (hermitian.rows == 0) {
                    return x; // default H = I
                }
                return matmul(hermitian, x);
            default:
                return x;
        }
    }
};

} // namespace qperc
