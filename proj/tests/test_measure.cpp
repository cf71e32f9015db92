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

#include "qperc/measure.hpp"
#include "support/generators.hpp"

using qperc::basis_ket;
using qperc::cdouble;
using qperc::DenseMatrix;
using qperc::Ket;
using qperc::MeasurableOperator;

namespace {

DenseMatrix diag2(double a, double b) {
    DenseMatrix m = DenseMatrix::zero(2, 2);
    m.at(0, 0) = a;
    m.at(1, 1) = b;
    return m;
}

Ket plus_state() {
    const double r = 1.0 / std::sqrt(2.0);
    Ket k{{cdouble{r, 0.0}, cdouble{r, 0.0}}};
    k.normalized = true;
    return k;
}

} // namespace

TEST_CASE("sigmoid hits the frozen reference points", "[measure]") {
    REQUIRE(qperc::sigmoid(0.0) == 0.5);
    REQUIRE(qperc::sigmoid(4.0) == Catch::Approx(0.9820137900379085).margin(1e-15));
    REQUIRE(qperc::sigmoid(-4.0) == Catch::Approx(1.0 - 0.9820137900379085).margin(1e-15));
}

TEST_CASE("sigmoid_map applies entrywise to real parts only", "[measure]") {
    std::mt19937_64 rng(41);
    const DenseMatrix a = gen::random_matrix(rng, 3, 3);
    const DenseMatrix s = qperc::sigmoid_map(a);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const double expect = 1.0 / (1.0 + std::exp(-a.at(i, j).real()));
            REQUIRE(std::abs(s.at(i, j).real() - expect) <= 1e-15);
            REQUIRE(s.at(i, j).imag() == 0.0);
            REQUIRE(s.at(i, j).real() > 0.0);
            REQUIRE(s.at(i, j).real() < 1.0);
        }
    }
}

TEST_CASE("born_measure on an eigenstate is deterministic", "[measure]") {
    const MeasurableOperator m = MeasurableOperator::from_matrix(diag2(1.0, -1.0));
    REQUIRE(m.eigenvalues[0] == Catch::Approx(1.0).margin(1e-13));
    REQUIRE(m.eigenvalues[1] == Catch::Approx(-1.0).margin(1e-13));

    std::mt19937_64 rng(42);
    const auto outcome = qperc::born_measure(m, basis_ket(0, 2), rng);
    REQUIRE(outcome.eigenvalue == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(outcome.probability == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(std::abs(outcome.post_state.amp[0] - cdouble{1.0, 0.0}) <= 1e-12);
    REQUIRE(std::abs(outcome.post_state.amp[1]) <= 1e-12);
}

TEST_CASE("born_measure splits the plus state evenly", "[measure]") {
    const MeasurableOperator m = MeasurableOperator::from_matrix(diag2(1.0, -1.0));
    std::mt19937_64 rng(43);
    const auto outcome = qperc::born_measure(m, plus_state(), rng);
    REQUIRE(outcome.probability == Catch::Approx(0.5).margin(1e-12));

    int plus_count = 0;
    const int draws = 100000;
    std::mt19937_64 freq_rng(7);
    for (int i = 0; i < draws; ++i) {
        if (qperc::born_measure(m, plus_state(), freq_rng).eigenvalue > 0.0) {
            ++plus_count;
        }
    }
    const double freq = static_cast<double>(plus_count) / draws;
    REQUIRE(std::abs(freq - 0.5) <= 0.01);
}

TEST_CASE("repeated measurement is projection-idempotent", "[measure]") {
    const MeasurableOperator m = MeasurableOperator::from_matrix(diag2(1.0, -1.0));
    std::mt19937_64 rng(44);
    for (int trial = 0; trial < 20; ++trial) {
        const Ket psi = gen::random_ket(rng, 2);
        const auto first = qperc::born_measure(m, psi, rng);
        const auto second = qperc::born_measure(m, first.post_state, rng);
        REQUIRE(second.eigenvalue == Catch::Approx(first.eigenvalue).margin(1e-10));
        REQUIRE(second.probability == Catch::Approx(1.0).margin(1e-10));
    }
}

TEST_CASE("degenerate eigenvalues are measured as one eigenspace", "[measure]") {
    const MeasurableOperator m = MeasurableOperator::from_matrix(DenseMatrix::identity(3));
    std::mt19937_64 rng(45);
    const Ket psi = gen::random_ket(rng, 3);
    const auto outcome = qperc::born_measure(m, psi, rng);
    REQUIRE(outcome.eigenvalue == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(outcome.probability == Catch::Approx(1.0).margin(1e-12));
    // Projection onto the full space returns the state itself.
    for (int i = 0; i < 3; ++i) {
        REQUIRE(std::abs(outcome.post_state.amp[static_cast<std::size_t>(i)] -
                         psi.amp[static_cast<std::size_t>(i)]) <= 1e-10);
    }
}

TEST_CASE("born probabilities over distinct eigenvalues sum to one", "[measure]") {
    std::mt19937_64 rng(46);
    const DenseMatrix h = gen::random_hermitian(rng, 4);
    const MeasurableOperator m = MeasurableOperator::from_matrix(h);
    const Ket psi = gen::random_ket(rng, 4);
    // Sum |<xi_j|psi>|^2 over all eigenvectors; grouping only repartitions it.
    double total = 0.0;
    for (int j = 0; j < 4; ++j) {
        cdouble c = 0.0;
        for (int i = 0; i < 4; ++i) {
            c += std::conj(m.eigenvectors.at(i, j)) * psi.amp[static_cast<std::size_t>(i)];
        }
        total += std::norm(c);
    }
    REQUIRE(total == Catch::Approx(1.0).margin(1e-10));
}

TEST_CASE("expectation matches the spectral sum and stays in range", "[measure]") {
    const MeasurableOperator flip = MeasurableOperator::from_matrix(diag2(1.0, -1.0));
    REQUIRE(qperc::expectation(flip, basis_ket(0, 2)) == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(qperc::expectation(flip, basis_ket(1, 2)) == Catch::Approx(-1.0).margin(1e-12));

    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 10; ++trial) {
        const MeasurableOperator m =
            MeasurableOperator::from_matrix(gen::random_hermitian(rng, 4));
        const Ket psi = gen::random_ket(rng, 4);
        double spectral = 0.0;
        for (int j = 0; j < 4; ++j) {
            cdouble c = 0.0;
            for (int i = 0; i < 4; ++i) {
                c += std::conj(m.eigenvectors.at(i, j)) * psi.amp[static_cast<std::size_t>(i)];
            }
            spectral += m.eigenvalues[static_cast<std::size_t>(j)] * std::norm(c);
        }
        const double direct = qperc::expectation(m, psi);
        REQUIRE(std::abs(direct - spectral) <= 1e-10);
        REQUIRE(direct >= m.eigenvalues.back() - 1e-12);
        REQUIRE(direct <= m.eigenvalues.front() + 1e-12);
    }
}

TEST_CASE("unnormalized states are rejected", "[measure]") {
    const MeasurableOperator m = MeasurableOperator::from_matrix(diag2(1.0, -1.0));
    const Ket big{{cdouble{2.0, 0.0}, cdouble{0.0, 0.0}}};
    std::mt19937_64 rng(48);
    REQUIRE_THROWS_AS(qperc::born_measure(m, big, rng), qperc::DomainError);
    REQUIRE_THROWS_AS(qperc::expectation(m, big), qperc::DomainError);
}

TEST_CASE("from_matrix rejects non-hermitian operators", "[measure]") {
    DenseMatrix bad = DenseMatrix::zero(2, 2);
    bad.at(0, 1) = 1.0; // missing the symmetric partner
    REQUIRE_THROWS_AS(MeasurableOperator::from_matrix(bad), qperc::DomainError);
}

TEST_CASE("WeightOperator variants apply as documented", "[measure]") {
    std::mt19937_64 rng(49);
    const DenseMatrix x = gen::random_matrix(rng, 3, 3);

    const DenseMatrix sig = qperc::WeightOperator::sigmoid_op().apply(x);
    REQUIRE(qperc::max_abs(qperc::subtract(sig, qperc::sigmoid_map(x))) == 0.0);

    const DenseMatrix same = qperc::WeightOperator::identity_op().apply(x);
    REQUIRE(qperc::max_abs(qperc::subtract(same, x)) == 0.0);

    const DenseMatrix h = diag2(1.0, -1.0);
    DenseMatrix x2 = DenseMatrix::identity(2);
    const DenseMatrix proj = qperc::WeightOperator::projective_op(h).apply(x2);
    REQUIRE(qperc::max_abs(qperc::subtract(proj, h)) <= 1e-15);

    DenseMatrix skew = DenseMatrix::zero(2, 2);
    skew.at(0, 1) = 1.0;
    REQUIRE_THROWS_AS(qperc::WeightOperator::projective_op(skew), qperc::DomainError);

    // sigma(0) = 0.5 on every entry of the zero matrix.
    const DenseMatrix half = qperc::WeightOperator::sigmoid_op().apply(DenseMatrix::zero(2, 2));
    for (const cdouble &z : half.data) {
        REQUIRE(z == cdouble{0.5, 0.0});
    }
}
