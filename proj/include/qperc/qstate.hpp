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
 * Complex state-vector algebra: kets, bras, inner/outer/tensor products,
 * and the dense row-major matrix carrier shared across the library.
 *
 * All values are immutable after construction and safe to share between
 * threads. The inner product is conjugate-linear in the FIRST argument
 * (physics convention), so inner(a, b) pairs the bra ⟨a| with the ket |b⟩.
 */

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "qperc/errors.hpp"

namespace qperc {

using cdouble = std::complex<double>;

/// Column state vector |ψ⟩. The bra ⟨ψ| is its conjugate transpose and is
/// taken implicitly by inner() and outer().
struct Ket {
    std::vector<cdouble> amp;
    /// Set only by normalize(); operations never silently renormalize.
    bool normalized = false;

    Ket() = default;

    explicit Ket(std::vector<cdouble> amplitudes) : amp(std::move(amplitudes)) {
        if (amp.empty()) {
            throw DomainError("Ket: dimension must be >= 1");
        }
    }

    Ket(std::initializer_list<cdouble> amplitudes)
        : Ket(std::vector<cdouble>(amplitudes)) {}

    [[nodiscard]] int dim() const { return static_cast<int>(amp.size()); }
};

/// Dense row-major complex matrix. Shared carrier for weight matrices,
/// unitary factors and transition data.
struct DenseMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<cdouble> data; // row-major, rows*cols entries

    DenseMatrix() = default;

    DenseMatrix(int r, int c, std::vector<cdouble> entries)
        : rows(r), cols(c), data(std::move(entries)) {
        if (rows <= 0 || cols <= 0 ||
            data.size() != static_cast<std::size_t>(rows) * cols) {
            throw DomainError("DenseMatrix: entry count must equal rows*cols");
        }
    }

    static DenseMatrix zero(int r, int c) {
        return {r, c, std::vector<cdouble>(static_cast<std::size_t>(r) * c)};
    }

    static DenseMatrix identity(int n) {
        DenseMatrix m = zero(n, n);
        for (int i = 0; i < n; ++i) {
            m.at(i, i) = 1.0;
        }
        return m;
    }

    [[nodiscard]] cdouble &at(int i, int j) {
        return data[static_cast<std::size_t>(i) * cols + j];
    }
    [[nodiscard]] const cdouble &at(int i, int j) const {
        return data[static_cast<std::size_t>(i) * cols + j];
    }

    [[nodiscard]] bool square() const { return rows == cols; }
};

/// One-hot unit vector with 1 at `index`, e.g. basis_ket(0, 2) = |0⟩.
inline Ket basis_ket(int index, int dim) {
    if (dim < 1) {
        throw DomainError("basis_ket: dim must be >= 1");
    }
    if (index < 0 || index >= dim) {
        throw DomainError("basis_ket: index " + std::to_string(index) +
                          " out of range for dim " + std::to_string(dim));
    }
    std::vector<cdouble> amp(static_cast<std::size_t>(dim));
    amp[static_cast<std::size_t>(index)] = 1.0;
    Ket k(std::move(amp));
    k.normalized = true;
    return k;
}

/// Kronecker product |a⟩ ⊗ |b⟩; entry i*dim(b)+j equals a_i * b_j.
inline Ket tensor(const Ket &a, const Ket &b) {
    std::vector<cdouble> amp;
    amp.reserve(a.amp.size() * b.amp.size());
    for (const cdouble &ai : a.amp) {
        for (const cdouble &bj : b.amp) {
            amp.push_back(ai * bj);
        }
    }
    return Ket(std::move(amp));
}

/// ⟨a|b⟩ = Σ conj(a_i) b_i. Conjugate-linear in the first argument.
inline cdouble inner(const Ket &a, const Ket &b) {
    if (a.dim() != b.dim()) {
        throw DomainError("inner: dimension mismatch " +
                          std::to_string(a.dim()) + " vs " +
                          std::to_string(b.dim()));
    }
    cdouble sum = 0.0;
    for (int i = 0; i < a.dim(); ++i) {
        sum += std::conj(a.amp[static_cast<std::size_t>(i)]) *
               b.amp[static_cast<std::size_t>(i)];
    }
    return sum;
}

/// Rank-1 matrix |y⟩⟨x| of shape dim(y) × dim(x); entry (i,j) = y_i * conj(x_j).
inline DenseMatrix outer(const Ket &y, const Ket &x) {
    DenseMatrix m = DenseMatrix::zero(y.dim(), x.dim());
    for (int i = 0; i < y.dim(); ++i) {
        for (int j = 0; j < x.dim(); ++j) {
            m.at(i, j) = y.amp[static_cast<std::size_t>(i)] *
                         std::conj(x.amp[static_cast<std::size_t>(j)]);
        }
    }
    return m;
}

inline double norm(const Ket &k) {
    double sq = 0.0;
    for (const cdouble &a : k.amp) {
        sq += std::norm(a);
    }
    return std::sqrt(sq);
}

/// Returns k / ‖k‖ with the `normalized` flag set.
inline Ket normalize(Ket k) {
    const double n = norm(k);
    if (n == 0.0) {
        throw DomainError("normalize: zero vector");
    }
    for (cdouble &a : k.amp) {
        a /= n;
    }
    k.normalized = true;
    return k;
}

inline Ket matvec(const DenseMatrix &m, const Ket &x) {
    if (m.cols != x.dim()) {
        throw DomainError("matvec: matrix is " + std::to_string(m.rows) + "x" +
                          std::to_string(m.cols) + " but vector has dim " +
                          std::to_string(x.dim()));
    }
    std::vector<cdouble> out(static_cast<std::size_t>(m.rows));
    for (int i = 0; i < m.rows; ++i) {
        cdouble sum = 0.0;
        for (int j = 0; j < m.cols; ++j) {
            sum += m.at(i, j) * x.amp[static_cast<std::size_t>(j)];
        }
        out[static_cast<std::size_t>(i)] = sum;
    }
    return Ket(std::move(out));
}

inline DenseMatrix matmul(const DenseMatrix &a, const DenseMatrix &b) {
    if (a.cols != b.rows) {
        throw DomainError("matmul: inner dimensions disagree");
    }
    DenseMatrix c = DenseMatrix::zero(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i) {
        for (int k = 0; k < a.cols; ++k) {
            const cdouble aik = a.at(i, k);
            if (aik == cdouble{0.0, 0.0}) {
                continue;
            }
            for (int j = 0; j < b.cols; ++j) {
                c.at(i, j) += aik * b.at(k, j);
            }
        }
    }
    return c;
}

/// Conjugate transpose M†.
inline DenseMatrix adjoint(const DenseMatrix &m) {
    DenseMatrix out = DenseMatrix::zero(m.cols, m.rows);
    for (int i = 0; i < m.rows; ++i) {
        for (int j = 0; j < m.cols; ++j) {
            out.at(j, i) = std::conj(m.at(i, j));
        }
    }
    return out;
}

inline DenseMatrix add(const DenseMatrix &a, const DenseMatrix &b) {
    if (a.rows != b.rows || a.cols != b.cols) {
        throw DomainError("add: shape mismatch");
    }
    DenseMatrix c = a;
    for (std::size_t i = 0; i < c.data.size(); ++i) {
        c.data[i] += b.data[i];
    }
    return c;
}

inline DenseMatrix subtract(const DenseMatrix &a, const DenseMatrix &b) {
    if (a.rows != b.rows || a.cols != b.cols) {
        throw DomainError("subtract: shape mismatch");
    }
    DenseMatrix c = a;
    for (std::size_t i = 0; i < c.data.size(); ++i) {
        c.data[i] -= b.data[i];
    }
    return c;
}

inline DenseMatrix scale(const DenseMatrix &a, cdouble factor) {
    DenseMatrix c = a;
    for (cdouble &v : c.data) {
        v *= factor;
    }
    return c;
}

/// Largest entry magnitude, max_ij |m_ij|.
inline double max_abs(const DenseMatrix &m) {
    double worst = 0.0;
    for (const cdouble &v : m.data) {
        worst = std::max(worst, std::abs(v));
    }
    return worst;
}

inline double frobenius_norm(const DenseMatrix &m) {
    double sq = 0.0;
    for (const cdouble &v : m.data) {
        sq += std::norm(v);
    }
    return std::sqrt(sq);
}

} // namespace qperc
