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
 * Dense complex factorizations at desk scale (d <= 32): one-sided Jacobi
 * SVD, cyclic Jacobi hermitian eigendecomposition, and the unitary polar
 * factor. Everything is deterministic for a fixed input: fixed sweep
 * order, fixed null-space completion order, and a fixed phase convention
 * (largest-magnitude component of each output column made real-positive).
 *
 * Both iterations cap at 100 sweeps with off-diagonal tolerance 1e-13 and
 * report the residual on non-convergence.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "qperc/errors.hpp"
#include "qperc/qstate.hpp"

namespace qperc {

inline constexpr int kJacobiMaxSweeps = 100;
inline constexpr double kJacobiOffTol = 1e-13;
inline constexpr double kUnitaryCertTol = 1e-10;

/// ‖M†M − I‖max: the certification residual used throughout.
inline double unitarity_error(const DenseMatrix &m) {
    if (!m.square()) {
        throw DomainError("unitarity_error: matrix must be square");
    }
    const int n = m.rows;
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            cdouble g = 0.0;
            for (int k = 0; k < n; ++k) {
                g += std::conj(m.at(k, i)) * m.at(k, j);
            }
            if (i == j) {
                g -= 1.0;
            }
            worst = std::max(worst, std::abs(g));
        }
    }
    return worst;
}

/// Square complex matrix with certified unitarity. `certified` is set only
/// by the certify() factory, so holding a certified map guarantees
/// ‖F†F − I‖max <= 1e-10.
struct UnitaryMap {
    DenseMatrix matrix;
    bool certified = false;

    UnitaryMap() = default;

    static UnitaryMap certify(DenseMatrix m) {
        const double err = unitarity_error(m);
        if (err > kUnitaryCertTol) {
            throw DomainError("UnitaryMap: certification failed, ‖U†U − I‖max = " +
                              std::to_string(err));
        }
        UnitaryMap u;
        u.matrix = std::move(m);
        u.certified = true;
        return u;
    }

    /// The adjoint of a certified unitary is unitary with the same residual.
    [[nodiscard]] UnitaryMap adjoint_map() const {
        UnitaryMap u;
        u.matrix = adjoint(matrix);
        u.certified = certified;
        return u;
    }

    [[nodiscard]] int dim() const { return matrix.rows; }
};

struct SvdResult {
    DenseMatrix U;
    std::vector<double> singular_values; // non-increasing, all >= 0
    DenseMatrix V;                       // A = U diag(sigma) V†
};

struct EigResult {
    std::vector<double> eigenvalues; // real, descending
    DenseMatrix eigenvectors;        // orthonormal columns
};

namespace detail {

/// Rotate the largest-magnitude component of column j real-positive.
/// `paired` (if given) receives the same phase so products like
/// U diag(s) V† are unchanged. Ties break to the lowest index.
inline void phase_fix_column(DenseMatrix &m, int j, DenseMatrix *paired) {
    int pivot = 0;
    double best = -1.0;
    for (int i = 0; i < m.rows; ++i) {
        const double mag = std::abs(m.at(i, j));
        if (mag > best) {
            best = mag;
            pivot = i;
        }
    }
    if (best <= 0.0) {
        return;
    }
    const cdouble alpha = std::conj(m.at(pivot, j)) / best;
    for (int i = 0; i < m.rows; ++i) {
        m.at(i, j) *= alpha;
    }
    if (paired != nullptr) {
        for (int i = 0; i < paired->rows; ++i) {
            paired->at(i, j) *= alpha;
        }
    }
}

/// Fill the null columns of `u` (flagged in `is_null`) with an orthonormal
/// completion built from standard basis vectors by modified Gram-Schmidt
/// with one reorthogonalization pass. Candidate choice is deterministic:
/// the unused basis vector with the largest residual norm, lowest index on
/// ties.
inline void complete_null_columns(DenseMatrix &u, const std::vector<bool> &is_null) {
    const int n = u.rows;
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    std::vector<bool> filled = is_null;
    for (std::size_t j = 0; j < filled.size(); ++j) {
        filled[j] = !filled[j]; // true where a column already exists
    }

    auto project_out = [&](std::vector<cdouble> &vec) {
        for (int c = 0; c < n; ++c) {
            if (!filled[static_cast<std::size_t>(c)]) {
                continue;
            }
            cdouble coeff = 0.0;
            for (int i = 0; i < n; ++i) {
                coeff += std::conj(u.at(i, c)) * vec[static_cast<std::size_t>(i)];
            }
            for (int i = 0; i < n; ++i) {
                vec[static_cast<std::size_t>(i)] -= coeff * u.at(i, c);
            }
        }
    };

    for (int j = 0; j < n; ++j) {
        if (filled[static_cast<std::size_t>(j)]) {
            continue;
        }
        int best_cand = -1;
        double best_norm = -1.0;
        std::vector<cdouble> best_vec;
        for (int cand = 0; cand < n; ++cand) {
            if (used[static_cast<std::size_t>(cand)]) {
                continue;
            }
            std::vector<cdouble> vec(static_cast<std::size_t>(n));
            vec[static_cast<std::size_t>(cand)] = 1.0;
            project_out(vec);
            double nr = 0.0;
            for (const cdouble &x : vec) {
                nr += std::norm(x);
            }
            nr = std::sqrt(nr);
            if (nr > best_norm) {
                best_norm = nr;
                best_cand = cand;
                best_vec = std::move(vec);
            }
        }
        used[static_cast<std::size_t>(best_cand)] = true;
        project_out(best_vec); // reorthogonalize
        double nr = 0.0;
        for (const cdouble &x : best_vec) {
            nr += std::norm(x);
        }
        nr = std::sqrt(nr);
        for (int i = 0; i < n; ++i) {
            u.at(i, j) = best_vec[static_cast<std::size_t>(i)] / nr;
        }
        filled[static_cast<std::size_t>(j)] = true;
    }
}

} // namespace detail

/**
 * One-sided Jacobi SVD of a square complex matrix: A = U diag(sigma) V†.
 *
 * Columns of a working copy are orthogonalized pairwise by right
 * rotations; V accumulates the rotations, sigma are the final column
 * norms. Singular directions below 1e-13 * sigma_max are completed to a
 * full orthonormal U so the polar factor is always a full unitary.
 */
inline SvdResult svd(const DenseMatrix &a) {
    if (!a.square()) {
        throw DomainError("svd: matrix must be square, got " +
                          std::to_string(a.rows) + "x" + std::to_string(a.cols));
    }
    const int n = a.rows;
    DenseMatrix w = a; // columns evolve into U * diag(sigma)
    DenseMatrix v = DenseMatrix::identity(n);

    bool converged = (n == 1);
    double worst_rel = 0.0;
    for (int sweep = 0; sweep < kJacobiMaxSweeps && !converged; ++sweep) {
        // Columns whose norm has collapsed to rounding debris (from a
        // rotation that annihilated a parallel pair) are numerically zero:
        // their debris is almost fully correlated with live columns and
        // would defeat the relative criterion below forever. They sit
        // under the 1e-13 null threshold regardless, so skipping them
        // changes nothing downstream.
        double smax_sq = 0.0;
        for (int j = 0; j < n; ++j) {
            double csq = 0.0;
            for (int k = 0; k < n; ++k) {
                csq += std::norm(w.at(k, j));
            }
            smax_sq = std::max(smax_sq, csq);
        }
        const double dead_sq = 1e-28 * smax_sq;

        converged = true;
        worst_rel = 0.0;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double app = 0.0;
                double aqq = 0.0;
                cdouble apq = 0.0;
                for (int k = 0; k < n; ++k) {
                    app += std::norm(w.at(k, p));
                    aqq += std::norm(w.at(k, q));
                    apq += std::conj(w.at(k, p)) * w.at(k, q);
                }
                if (app <= dead_sq || aqq <= dead_sq) {
                    continue;
                }
                const double mag = std::abs(apq);
                const double scale = std::sqrt(app * aqq);
                if (mag <= kJacobiOffTol * scale) {
                    continue;
                }
                converged = false;
                worst_rel = std::max(worst_rel, mag / scale);

                // Phase-rotate column q so the 2x2 Gram block is real
                // symmetric, then apply the classic Jacobi rotation.
                const cdouble phase_conj = std::conj(apq) / mag; // e^{-i phi}
                const double tau = (aqq - app) / (2.0 * mag);
                const double t =
                    std::copysign(1.0, tau) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cdouble ws = phase_conj * s;
                const cdouble wc = phase_conj * c;
                for (int k = 0; k < n; ++k) {
                    const cdouble wp = w.at(k, p);
                    const cdouble wq = w.at(k, q);
                    w.at(k, p) = c * wp - ws * wq;
                    w.at(k, q) = s * wp + wc * wq;
                }
                for (int k = 0; k < n; ++k) {
                    const cdouble vp = v.at(k, p);
                    const cdouble vq = v.at(k, q);
                    v.at(k, p) = c * vp - ws * vq;
                    v.at(k, q) = s * vp + wc * vq;
                }
            }
        }
    }
    if (!converged) {
        throw NumericError("svd: no convergence within " +
                           std::to_string(kJacobiMaxSweeps) +
                           " sweeps; worst relative off-diagonal " +
                           std::to_string(worst_rel));
    }

    std::vector<double> sigma(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        double sq = 0.0;
        for (int k = 0; k < n; ++k) {
            sq += std::norm(w.at(k, j));
        }
        sigma[static_cast<std::size_t>(j)] = std::sqrt(sq);
    }

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
        return sigma[static_cast<std::size_t>(i)] > sigma[static_cast<std::size_t>(j)];
    });

    SvdResult res;
    res.U = DenseMatrix::zero(n, n);
    res.V = DenseMatrix::zero(n, n);
    res.singular_values.resize(static_cast<std::size_t>(n));
    const double sigma_max = sigma[static_cast<std::size_t>(order[0])];
    const double null_thresh = sigma_max * kJacobiOffTol;
    std::vector<bool> is_null(static_cast<std::size_t>(n), false);
    for (int j = 0; j < n; ++j) {
        const int src = order[static_cast<std::size_t>(j)];
        const double s = sigma[static_cast<std::size_t>(src)];
        res.singular_values[static_cast<std::size_t>(j)] = s;
        for (int i = 0; i < n; ++i) {
            res.V.at(i, j) = v.at(i, src);
        }
        if (s > null_thresh) {
            for (int i = 0; i < n; ++i) {
                res.U.at(i, j) = w.at(i, src) / s;
            }
        } else {
            is_null[static_cast<std::size_t>(j)] = true;
        }
    }
    detail::complete_null_columns(res.U, is_null);

    for (int j = 0; j < n; ++j) {
        if (is_null[static_cast<std::size_t>(j)]) {
            // sigma ~ 0: the U and V phases are independent.
            detail::phase_fix_column(res.U, j, nullptr);
            detail::phase_fix_column(res.V, j, nullptr);
        } else {
            detail::phase_fix_column(res.U, j, &res.V);
        }
    }
    return res;
}

/**
 * Eigendecomposition of a hermitian matrix by cyclic Jacobi:
 * H = Xi diag(lambda) Xi†, eigenvalues real and descending.
 *
 * The input must satisfy ‖H − H†‖max <= 1e-10; it is hermitized once up
 * front so rounding drift cannot leak into the iteration.
 */
inline EigResult herm_eig(const DenseMatrix &h) {
    if (!h.square()) {
        throw DomainError("herm_eig: matrix must be square");
    }
    const int n = h.rows;
    double asym = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            asym = std::max(asym, std::abs(h.at(i, j) - std::conj(h.at(j, i))));
        }
    }
    if (asym > 1e-10) {
        throw DomainError("herm_eig: matrix is not hermitian, ‖H − H†‖max = " +
                          std::to_string(asym));
    }

    DenseMatrix a = DenseMatrix::zero(n, n);
    for (int i = 0; i < n; ++i) {
        a.at(i, i) = h.at(i, i).real();
        for (int j = i + 1; j < n; ++j) {
            const cdouble m = 0.5 * (h.at(i, j) + std::conj(h.at(j, i)));
            a.at(i, j) = m;
            a.at(j, i) = std::conj(m);
        }
    }
    DenseMatrix xi = DenseMatrix::identity(n);

    const double scale = frobenius_norm(a);
    const double off_tol = kJacobiOffTol * scale;
    auto off_norm = [&]() {
        double sq = 0.0;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (i != j) {
                    sq += std::norm(a.at(i, j));
                }
            }
        }
        return std::sqrt(sq);
    };

    double off = off_norm();
    int sweep = 0;
    while (off > off_tol && sweep < kJacobiMaxSweeps) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cdouble beta = a.at(p, q);
                const double mag = std::abs(beta);
                if (mag == 0.0) {
                    continue;
                }
                const double alpha = a.at(p, p).real();
                const double gamma = a.at(q, q).real();
                const cdouble phase_conj = std::conj(beta) / mag; // e^{-i phi}
                const cdouble phase = beta / mag;                 // e^{+i phi}
                const double tau = (gamma - alpha) / (2.0 * mag);
                const double t =
                    std::copysign(1.0, tau) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                for (int k = 0; k < n; ++k) { // A <- A J
                    const cdouble ap = a.at(k, p);
                    const cdouble aq = a.at(k, q);
                    a.at(k, p) = c * ap - s * phase_conj * aq;
                    a.at(k, q) = s * ap + c * phase_conj * aq;
                }
                for (int k = 0; k < n; ++k) { // A <- J† A
                    const cdouble ap = a.at(p, k);
                    const cdouble aq = a.at(q, k);
                    a.at(p, k) = c * ap - s * phase * aq;
                    a.at(q, k) = s * ap + c * phase * aq;
                }
                a.at(p, q) = 0.0;
                a.at(q, p) = 0.0;
                a.at(p, p) = a.at(p, p).real();
                a.at(q, q) = a.at(q, q).real();

                for (int k = 0; k < n; ++k) { // Xi <- Xi J
                    const cdouble xp = xi.at(k, p);
                    const cdouble xq = xi.at(k, q);
                    xi.at(k, p) = c * xp - s * phase_conj * xq;
                    xi.at(k, q) = s * xp + c * phase_conj * xq;
                }
            }
        }
        off = off_norm();
        ++sweep;
    }
    if (off > off_tol) {
        throw NumericError("herm_eig: no convergence within " +
                           std::to_string(kJacobiMaxSweeps) +
                           " sweeps; off-diagonal norm " + std::to_string(off));
    }

    std::vector<double> lambda(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        lambda[static_cast<std::size_t>(i)] = a.at(i, i).real();
    }
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
        return lambda[static_cast<std::size_t>(i)] > lambda[static_cast<std::size_t>(j)];
    });

    EigResult res;
    res.eigenvalues.resize(static_cast<std::size_t>(n));
    res.eigenvectors = DenseMatrix::zero(n, n);
    for (int j = 0; j < n; ++j) {
        const int src = order[static_cast<std::size_t>(j)];
        res.eigenvalues[static_cast<std::size_t>(j)] = lambda[static_cast<std::size_t>(src)];
        for (int i = 0; i < n; ++i) {
            res.eigenvectors.at(i, j) = xi.at(i, src);
        }
        detail::phase_fix_column(res.eigenvectors, j, nullptr);
    }
    return res;
}

/// Unitary polar factor U V† of a square matrix, the nearest unitary in
/// Frobenius norm. Rank-deficient input is handled by the SVD's
/// null-space completion, so the result is always a full unitary.
inline UnitaryMap polar_unitary(const DenseMatrix &a) {
    const SvdResult r = svd(a);
    return UnitaryMap::certify(matmul(r.U, adjoint(r.V)));
}

} // namespace qperc
