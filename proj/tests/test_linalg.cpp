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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "qperc/linalg.hpp"
#include "qperc/qstate.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using qperc::cdouble;
using qperc::DenseMatrix;
using qperc::EigResult;
using qperc::SvdResult;

namespace {

DenseMatrix reconstruct(const SvdResult &r) {
    const int n = r.U.rows;
    DenseMatrix usv = DenseMatrix::zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            cdouble acc = 0.0;
            for (int k = 0; k < n; ++k) {
                acc += r.U.at(i, k) * r.singular_values[static_cast<std::size_t>(k)] *
                       std::conj(r.V.at(j, k));
            }
            usv.at(i, j) = acc;
        }
    }
    return usv;
}

} // namespace

TEST_CASE("svd of the identity has unit singular values", "[linalg]") {
    const SvdResult r = qperc::svd(DenseMatrix::identity(2));
    REQUIRE(r.singular_values.size() == 2);
    REQUIRE(r.singular_values[0] == Catch::Approx(1.0).margin(1e-14));
    REQUIRE(r.singular_values[1] == Catch::Approx(1.0).margin(1e-14));
}

TEST_CASE("svd of diag(3, 0) finds (3, 0) and completes the null space", "[linalg]") {
    DenseMatrix a = DenseMatrix::zero(2, 2);
    a.at(0, 0) = 3.0;
    const SvdResult r = qperc::svd(a);
    REQUIRE(r.singular_values[0] == Catch::Approx(3.0).margin(1e-13));
    REQUIRE(r.singular_values[1] == Catch::Approx(0.0).margin(1e-13));
    REQUIRE(qperc::unitarity_error(r.U) <= 1e-10);
    REQUIRE(qperc::unitarity_error(r.V) <= 1e-10);
    REQUIRE(qperc::max_abs(qperc::subtract(reconstruct(r), a)) <= 1e-10);
}

TEST_CASE("svd reconstructs random complex matrices with unitary factors", "[linalg]") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 10; ++trial) {
        const DenseMatrix a = gen::random_matrix(rng, 4, 4);
        const SvdResult r = qperc::svd(a);
        REQUIRE(qperc::unitarity_error(r.U) <= 1e-10);
        REQUIRE(qperc::unitarity_error(r.V) <= 1e-10);
        for (std::size_t k = 0; k + 1 < r.singular_values.size(); ++k) {
            REQUIRE(r.singular_values[k] >= r.singular_values[k + 1]);
        }
        REQUIRE(r.singular_values.back() >= 0.0);
        const double resid = qperc::frobenius_norm(qperc::subtract(reconstruct(r), a));
        REQUIRE(resid <= 1e-10 * std::max(1.0, qperc::frobenius_norm(a)));
    }
}

TEST_CASE("svd rejects non-square input", "[linalg]") {
    REQUIRE_THROWS_AS(qperc::svd(DenseMatrix::zero(2, 3)), qperc::DomainError);
}

TEST_CASE("singular values are invariant under unitary sandwiching", "[linalg]") {
    std::mt19937_64 rng(22);
    const DenseMatrix a = gen::random_matrix(rng, 4, 4);
    const SvdResult base = qperc::svd(a);
    const qperc::UnitaryMap lu = gen::random_unitary(rng, 4);
    const qperc::UnitaryMap ru = gen::random_unitary(rng, 4);
    const SvdResult moved = qperc::svd(qperc::matmul(lu.matrix, qperc::matmul(a, ru.matrix)));
    for (std::size_t k = 0; k < base.singular_values.size(); ++k) {
        REQUIRE(std::abs(base.singular_values[k] - moved.singular_values[k]) <= 1e-10);
    }
}

TEST_CASE("svd on a rank-1 outer product recovers norm and directions", "[linalg]") {
    // G = t a† with unit t, a: sigma = (1, 0, 0), first columns match t and a
    // up to the shared phase convention.
    const qperc::Ket t = qperc::basis_ket(1, 3);
    const qperc::Ket a = qperc::normalize(qperc::Ket{{cdouble{1.0, 0.0},
                                                      cdouble{0.0, 0.0},
                                                      cdouble{1.0, 0.0}}});
    const DenseMatrix g = qperc::outer(t, a);
    const SvdResult r = qperc::svd(g);
    REQUIRE(r.singular_values[0] == Catch::Approx(1.0).margin(1e-13));
    REQUIRE(r.singular_values[1] == Catch::Approx(0.0).margin(1e-13));
    REQUIRE(r.singular_values[2] == Catch::Approx(0.0).margin(1e-13));
    const double resid = qperc::max_abs(qperc::subtract(reconstruct(r), g));
    REQUIRE(resid <= 1e-12);
    REQUIRE(qperc::unitarity_error(r.U) <= 1e-10);
}

TEST_CASE("herm_eig of diag(2, -1) is immediate", "[linalg]") {
    DenseMatrix h = DenseMatrix::zero(2, 2);
    h.at(0, 0) = 2.0;
    h.at(1, 1) = -1.0;
    const EigResult r = qperc::herm_eig(h);
    REQUIRE(r.eigenvalues[0] == Catch::Approx(2.0).margin(1e-13));
    REQUIRE(r.eigenvalues[1] == Catch::Approx(-1.0).margin(1e-13));
    REQUIRE(std::abs(r.eigenvectors.at(0, 0) - cdouble{1.0, 0.0}) <= 1e-13);
    REQUIRE(std::abs(r.eigenvectors.at(1, 1) - cdouble{1.0, 0.0}) <= 1e-13);
}

TEST_CASE("herm_eig of the flip matrix gives (+1, -1) and (1, ±1)/√2", "[linalg]") {
    DenseMatrix h = DenseMatrix::zero(2, 2);
    h.at(0, 1) = 1.0;
    h.at(1, 0) = 1.0;
    const EigResult r = qperc::herm_eig(h);
    REQUIRE(r.eigenvalues[0] == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(r.eigenvalues[1] == Catch::Approx(-1.0).margin(1e-12));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    // Phase convention: largest-magnitude component real-positive, ties to
    // the lowest index, so both vectors lead with +1/sqrt2.
    REQUIRE(std::abs(r.eigenvectors.at(0, 0) - cdouble{inv_sqrt2, 0.0}) <= 1e-12);
    REQUIRE(std::abs(r.eigenvectors.at(1, 0) - cdouble{inv_sqrt2, 0.0}) <= 1e-12);
    REQUIRE(std::abs(r.eigenvectors.at(0, 1) - cdouble{inv_sqrt2, 0.0}) <= 1e-12);
    REQUIRE(std::abs(r.eigenvectors.at(1, 1) - cdouble{-inv_sqrt2, 0.0}) <= 1e-12);
}

TEST_CASE("herm_eig reconstructs random hermitian matrices", "[linalg]") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 8; ++trial) {
        const DenseMatrix h = gen::random_hermitian(rng, 5);
        const EigResult r = qperc::herm_eig(h);
        REQUIRE(qperc::unitarity_error(r.eigenvectors) <= 1e-10);
        const DenseMatrix rebuilt = oracle::spectral_sum(r.eigenvalues, r.eigenvectors);
        const double resid = qperc::frobenius_norm(qperc::subtract(rebuilt, h));
        REQUIRE(resid <= 1e-9 * std::max(1.0, qperc::frobenius_norm(h)));

        double trace = 0.0;
        for (int i = 0; i < 5; ++i) {
            trace += h.at(i, i).real();
        }
        double sum = 0.0;
        for (double ev : r.eigenvalues) {
            sum += ev;
        }
        REQUIRE(std::abs(sum - trace) <= 1e-10 * std::max(1.0, std::abs(trace)));
    }
}

TEST_CASE("herm_eig rejects non-hermitian input with the asymmetry norm", "[linalg]") {
    DenseMatrix h = DenseMatrix::zero(2, 2);
    h.at(0, 1) = cdouble{0.0, 1.0};
    h.at(1, 0) = cdouble{0.0, 1.0}; // should be -i for hermitian
    REQUIRE_THROWS_AS(qperc::herm_eig(h), qperc::DomainError);
    try {
        qperc::herm_eig(h);
    } catch (const qperc::DomainError &e) {
        REQUIRE(std::string(e.what()).find("hermitian") != std::string::npos);
    }
}

TEST_CASE("polar_unitary of a unitary is itself", "[linalg]") {
    std::mt19937_64 rng(24);
    const qperc::UnitaryMap u = gen::random_unitary(rng, 3);
    const qperc::UnitaryMap p = qperc::polar_unitary(u.matrix);
    REQUIRE(qperc::max_abs(qperc::subtract(p.matrix, u.matrix)) <= 1e-10);
}

TEST_CASE("polar_unitary of a positive diagonal is the identity", "[linalg]") {
    DenseMatrix a = DenseMatrix::zero(2, 2);
    a.at(0, 0) = 3.0;
    a.at(1, 1) = 1.0;
    const qperc::UnitaryMap p = qperc::polar_unitary(a);
    REQUIRE(qperc::max_abs(qperc::subtract(p.matrix, DenseMatrix::identity(2))) <= 1e-12);
}

TEST_CASE("polar_unitary matches the Newton iteration oracle", "[linalg]") {
    std::mt19937_64 rng(25);
    for (int trial = 0; trial < 6; ++trial) {
        const DenseMatrix a = gen::random_matrix(rng, 4, 4);
        // Random 4x4 complex matrices are invertible with overwhelming
        // probability; the Newton oracle would throw otherwise.
        const qperc::UnitaryMap p = qperc::polar_unitary(a);
        const DenseMatrix q = oracle::newton_polar(a);
        REQUIRE(qperc::max_abs(qperc::subtract(p.matrix, q)) <= 1e-8);
        REQUIRE(p.certified);
    }
}

TEST_CASE("polar_unitary is scale invariant", "[linalg]") {
    std::mt19937_64 rng(26);
    const DenseMatrix a = gen::random_matrix(rng, 4, 4);
    const qperc::UnitaryMap p1 = qperc::polar_unitary(a);
    const qperc::UnitaryMap p2 = qperc::polar_unitary(qperc::scale(a, 7.5));
    REQUIRE(qperc::max_abs(qperc::subtract(p1.matrix, p2.matrix)) <= 1e-10);
}

TEST_CASE("polar_unitary of the zero matrix is a full unitary", "[linalg]") {
    const qperc::UnitaryMap p = qperc::polar_unitary(DenseMatrix::zero(3, 3));
    REQUIRE(qperc::unitarity_error(p.matrix) <= 1e-10);
}

TEST_CASE("UnitaryMap::certify accepts unitaries and rejects the rest", "[linalg]") {
    const qperc::UnitaryMap ok = qperc::UnitaryMap::certify(DenseMatrix::identity(3));
    REQUIRE(ok.certified);
    DenseMatrix bad = DenseMatrix::identity(2);
    bad.at(0, 0) = 1.5;
    REQUIRE_THROWS_AS(qperc::UnitaryMap::certify(bad), qperc::DomainError);

    const qperc::UnitaryMap adj = ok.adjoint_map();
    REQUIRE(adj.certified);
    std::mt19937_64 rng(27);
    const qperc::UnitaryMap u = gen::random_unitary(rng, 4);
    const DenseMatrix prod = qperc::matmul(u.adjoint_map().matrix, u.matrix);
    REQUIRE(qperc::max_abs(qperc::subtract(prod, DenseMatrix::identity(4))) <= 1e-10);
}

TEST_CASE("svd is deterministic for a fixed input", "[linalg]") {
    std::mt19937_64 rng(28);
    const DenseMatrix a = gen::random_matrix(rng, 4, 4);
    const SvdResult r1 = qperc::svd(a);
    const SvdResult r2 = qperc::svd(a);
    REQUIRE(qperc::max_abs(qperc::subtract(r1.U, r2.U)) == 0.0);
    REQUIRE(qperc::max_abs(qperc::subtract(r1.V, r2.V)) == 0.0);
    for (std::size_t k = 0; k < r1.singular_values.size(); ++k) {
        REQUIRE(r1.singular_values[k] == r2.singular_values[k]);
    }
}
