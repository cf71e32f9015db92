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

#include <complex>
#include <random>

#include "qperc/qstate.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using qperc::basis_ket;
using qperc::cdouble;
using qperc::DenseMatrix;
using qperc::Ket;

namespace {
constexpr cdouble kI{0.0, 1.0};
}

TEST_CASE("basis_ket produces one-hot unit vectors", "[qstate]") {
    const Ket zero = basis_ket(0, 2);
    REQUIRE(zero.amp[0] == cdouble{1.0, 0.0});
    REQUIRE(zero.amp[1] == cdouble{0.0, 0.0});
    REQUIRE(zero.normalized);

    const Ket one = basis_ket(1, 2);
    REQUIRE(one.amp[0] == cdouble{0.0, 0.0});
    REQUIRE(one.amp[1] == cdouble{1.0, 0.0});

    const Ket last = basis_ket(3, 4);
    for (int i = 0; i < 3; ++i) {
        REQUIRE(last.amp[static_cast<std::size_t>(i)] == cdouble{0.0, 0.0});
    }
    REQUIRE(last.amp[3] == cdouble{1.0, 0.0});

    REQUIRE_THROWS_AS(basis_ket(2, 2), qperc::DomainError);
    REQUIRE_THROWS_AS(basis_ket(0, 0), qperc::DomainError);
}

TEST_CASE("tensor matches the explicit 2x2 amplitude table", "[qstate]") {
    const cdouble p0{0.3, 0.1};
    const cdouble p1{-0.2, 0.5};
    const cdouble q0{0.9, -0.4};
    const cdouble q1{0.0, 0.7};
    const Ket a{{p0, p1}};
    const Ket b{{q0, q1}};
    const Ket t = qperc::tensor(a, b);
    REQUIRE(t.dim() == 4);
    // Tolerance instead of bit equality: the compiler constant-folds these
    // products with correct rounding, the library multiplies at runtime.
    REQUIRE(std::abs(t.amp[0] - p0 * q0) <= 1e-15);
    REQUIRE(std::abs(t.amp[1] - p0 * q1) <= 1e-15);
    REQUIRE(std::abs(t.amp[2] - p1 * q0) <= 1e-15);
    REQUIRE(std::abs(t.amp[3] - p1 * q1) <= 1e-15);
}

TEST_CASE("tensor of |0> and |1> is the one-hot at index 1", "[qstate]") {
    const Ket t = qperc::tensor(basis_ket(0, 2), basis_ket(1, 2));
    REQUIRE(t.dim() == 4);
    REQUIRE(t.amp[0] == cdouble{0.0, 0.0});
    REQUIRE(t.amp[1] == cdouble{1.0, 0.0});
    REQUIRE(t.amp[2] == cdouble{0.0, 0.0});
    REQUIRE(t.amp[3] == cdouble{0.0, 0.0});
}

TEST_CASE("tensor agrees with the nested-loop Kronecker oracle", "[qstate]") {
    std::mt19937_64 rng(11);
    const Ket a = gen::random_ket(rng, 3, false);
    const Ket b = gen::random_ket(rng, 2, false);
    const Ket t = qperc::tensor(a, b);
    const auto expect = oracle::kron_vec(a.amp, b.amp);
    REQUIRE(t.amp.size() == expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i) {
        REQUIRE(std::abs(t.amp[i] - expect[i]) <= 1e-15);
    }
}

TEST_CASE("tensor norm is multiplicative", "[qstate]") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        const Ket a = gen::random_ket(rng, 4, false);
        const Ket b = gen::random_ket(rng, 3, false);
        const double lhs = qperc::norm(qperc::tensor(a, b));
        const double rhs = qperc::norm(a) * qperc::norm(b);
        REQUIRE(std::abs(lhs - rhs) <= 1e-12);
    }
}

TEST_CASE("outer of basis kets is the matrix unit", "[qstate]") {
    const DenseMatrix m = qperc::outer(basis_ket(1, 2), basis_ket(0, 2));
    REQUIRE(m.at(0, 0) == cdouble{0.0, 0.0});
    REQUIRE(m.at(0, 1) == cdouble{0.0, 0.0});
    REQUIRE(m.at(1, 0) == cdouble{1.0, 0.0});
    REQUIRE(m.at(1, 1) == cdouble{0.0, 0.0});

    const DenseMatrix p = qperc::outer(basis_ket(0, 2), basis_ket(0, 2));
    REQUIRE(p.at(0, 0) == cdouble{1.0, 0.0});
    REQUIRE(p.at(1, 1) == cdouble{0.0, 0.0});
}

TEST_CASE("outer agrees with the double-loop oracle and conjugates", "[qstate]") {
    std::mt19937_64 rng(13);
    const Ket y = gen::random_ket(rng, 3, false);
    const Ket x = gen::random_ket(rng, 4, false);
    const DenseMatrix got = qperc::outer(y, x);
    const DenseMatrix expect = oracle::outer(y, x);
    REQUIRE(got.rows == 3);
    REQUIRE(got.cols == 4);
    REQUIRE(qperc::max_abs(qperc::subtract(got, expect)) <= 1e-15);

    // outer(y, x) x = y <x, x>
    const Ket applied = qperc::matvec(got, x);
    const cdouble xx = qperc::inner(x, x);
    for (int i = 0; i < 3; ++i) {
        REQUIRE(std::abs(applied.amp[static_cast<std::size_t>(i)] -
                         y.amp[static_cast<std::size_t>(i)] * xx) <= 1e-12);
    }
}

TEST_CASE("inner is conjugate-linear in the first argument", "[qstate]") {
    REQUIRE(qperc::inner(basis_ket(0, 2), basis_ket(0, 2)) == cdouble{1.0, 0.0});
    REQUIRE(qperc::inner(basis_ket(0, 2), basis_ket(1, 2)) == cdouble{0.0, 0.0});

    const double r = 1.0 / std::sqrt(2.0);
    const Ket k{{r * cdouble{1.0, 0.0}, r * kI}};
    const cdouble self = qperc::inner(k, k);
    REQUIRE(std::abs(self - cdouble{1.0, 0.0}) <= 1e-15);

    // <i*a, b> = -i <a, b>
    std::mt19937_64 rng(14);
    const Ket a = gen::random_ket(rng, 3, false);
    const Ket b = gen::random_ket(rng, 3, false);
    Ket ia = a;
    for (auto &z : ia.amp) {
        z *= kI;
    }
    REQUIRE(std::abs(qperc::inner(ia, b) - (-kI) * qperc::inner(a, b)) <= 1e-15);

    REQUIRE_THROWS_AS(qperc::inner(basis_ket(0, 2), basis_ket(0, 3)),
                      qperc::DomainError);
}

TEST_CASE("inner of a ket with itself is real nonnegative", "[qstate]") {
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 20; ++trial) {
        const Ket a = gen::random_ket(rng, 5, false);
        const cdouble self = qperc::inner(a, a);
        REQUIRE(std::abs(self.imag()) <= 1e-15);
        REQUIRE(self.real() >= 0.0);
    }
}

TEST_CASE("normalize produces unit norm and rejects zero", "[qstate]") {
    const Ket raw{{cdouble{3.0, 0.0}, cdouble{0.0, 4.0}}};
    const Ket unit = qperc::normalize(raw);
    REQUIRE(unit.normalized);
    REQUIRE(std::abs(qperc::norm(unit) - 1.0) <= 1e-12);
    REQUIRE(std::abs(unit.amp[0] - cdouble{0.6, 0.0}) <= 1e-15);
    REQUIRE(std::abs(unit.amp[1] - cdouble{0.0, 0.8}) <= 1e-15);

    const Ket zero{{cdouble{0.0, 0.0}, cdouble{0.0, 0.0}}};
    REQUIRE_THROWS_AS(qperc::normalize(zero), qperc::DomainError);
}

TEST_CASE("matvec, matmul, adjoint behave like the textbook loops", "[qstate]") {
    std::mt19937_64 rng(16);
    const DenseMatrix a = gen::random_matrix(rng, 3, 3);
    const DenseMatrix b = gen::random_matrix(rng, 3, 3);
    const Ket x = gen::random_ket(rng, 3, false);

    // (AB)x = A(Bx)
    const Ket lhs = qperc::matvec(qperc::matmul(a, b), x);
    const Ket rhs = qperc::matvec(a, qperc::matvec(b, x));
    for (int i = 0; i < 3; ++i) {
        REQUIRE(std::abs(lhs.amp[static_cast<std::size_t>(i)] -
                         rhs.amp[static_cast<std::size_t>(i)]) <= 1e-13);
    }

    // (A†)_{ij} = conj(A_{ji})
    const DenseMatrix ad = qperc::adjoint(a);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            REQUIRE(ad.at(i, j) == std::conj(a.at(j, i)));
        }
    }

    // <x, Ay> = <A†x, y>
    const Ket y = gen::random_ket(rng, 3, false);
    const cdouble inner_lhs = qperc::inner(x, qperc::matvec(a, y));
    const cdouble inner_rhs = qperc::inner(qperc::matvec(ad, x), y);
    REQUIRE(std::abs(inner_lhs - inner_rhs) <= 1e-13);
}

TEST_CASE("empty kets and mismatched shapes are rejected", "[qstate]") {
    REQUIRE_THROWS_AS(Ket{std::vector<cdouble>{}}, qperc::DomainError);
    const DenseMatrix m = DenseMatrix::zero(2, 3);
    REQUIRE_THROWS_AS(qperc::matvec(m, basis_ket(0, 2)), qperc::DomainError);
    const DenseMatrix sq = DenseMatrix::zero(2, 2);
    REQUIRE_THROWS_AS(qperc::matmul(m, sq), qperc::DomainError);
}
