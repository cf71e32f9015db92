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

// Markov chains from unitary amplitudes, and the continuous neuron
// relaxation integrated with explicit Euler.
//
// Index convention, stated once and loudly: T(i, j) is the probability of
// moving TO state i FROM state j. Columns are distributions. Both
// conventions circulate in the literature; this file uses the column
// reading throughout, matching the amplitude rule Pr[new = i | old = j].
//
// A physical device would draw these transitions by measurement; this is
// a classical emulation, so a seeded generator stands in for the
// measurement randomness. Output metadata in the harness says so.

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qperc/errors.hpp"
#include "qperc/linalg.hpp"
#include "qperc/measure.hpp"
#include "qperc/qstate.hpp"
#include "qperc/rng.hpp"

namespace qperc {

/// Step cap for the Euler integrator; the scheme is cheap but explicit,
/// and anything past this is a configuration mistake, not a computation.
inline constexpr int kMaxDynamicsSteps = 1000000;

/// Doubly stochastic transition probabilities, column-major semantics:
/// at(i, j) = Pr[move to i | currently at j].
struct TransitionMatrix {
    int n = 0;
    std::vector<double> p; // row-major storage, n * n

    double at(int i, int j) const {
        return p[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                 static_cast<std::size_t>(j)];
    }
    double &at(int i, int j) {
        return p[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                 static_cast<std::size_t>(j)];
    }
};

/// Squared-modulus transition matrix of a certified unitary. Unitarity
/// forces every row and column to sum to 1; this is re-checked at 1e-12
/// and a violation is reported as a numeric error rather than silently
/// renormalized.
inline TransitionMatrix transition_matrix(const UnitaryMap &u) {
    if (!u.certified) {
        throw DomainError("transition_matrix: input unitary is not certified");
    }
    const int n = u.dim();
    TransitionMatrix t;
    t.n = n;
    t.p.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            t.at(i, j) = std::norm(u.matrix.at(i, j));
        }
    }
    for (int k = 0; k < n; ++k) {
        double row = 0.0;
        double col = 0.0;
        for (int m = 0; m < n; ++m) {
            row += t.at(k, m);
            col += t.at(m, k);
        }
        if (std::abs(row - 1.0) > 1e-12 || std::abs(col - 1.0) > 1e-12) {
            throw NumericError("transition_matrix: sums off by " +
                               std::to_string(std::max(std::abs(row - 1.0),
                                                       std::abs(col - 1.0))) +
                               " at index " + std::to_string(k));
        }
    }
    return t;
}

/// Seeded trajectory of length steps + 1 starting at `start`. Transitions
/// are drawn by cumulative inversion down column j; the final bucket with
/// nonzero probability absorbs any floating-point shortfall.
inline std::vector<int> simulate_chain(const UnitaryMap &u, int start, int steps,
                                       std::uint64_t seed) {
    const TransitionMatrix t = transition_matrix(u);
    if (start < 0 || start >= t.n) {
        throw DomainError("simulate_chain: start state " + std::to_string(start) +
                          " out of range for dimension " + std::to_string(t.n));
    }
    if (steps < 0) {
        throw DomainError("simulate_chain: negative step count");
    }
    std::mt19937_64 rng(seed);
    std::vector<int> trajectory;
    trajectory.reserve(static_cast<std::size_t>(steps) + 1);
    trajectory.push_back(start);
    int state = start;
    for (int s = 0; s < steps; ++s) {
        const double draw = uniform_unit(rng);
        double cumulative = 0.0;
        int chosen = -1;
        int last_nonzero = -1;
        for (int i = 0; i < t.n; ++i) {
            const double pij = t.at(i, state);
            if (pij > 0.0) last_nonzero = i;
            cumulative += pij;
            if (draw < cumulative) {
                chosen = i;
                break;
            }
        }
        if (chosen < 0) chosen = last_nonzero;
        state = chosen;
        trajectory.push_back(state);
    }
    return trajectory;
}

/// State for the relaxation 'tau_i dZ_i/dt = -Z_i + sigmoid((W Z)_i)',
/// discretised below. w is row-major n x n.
struct DynamicsState {
    std::vector<double> z;
    std::vector<double> tau;
    std::vector<double> w;
    double h = 0.1;

    int dim() const { return static_cast<int>(z.size()); }
};

namespace detail {

inline void validate_dynamics(const DynamicsState &state) {
    const std::size_t n = state.z.size();
    if (n == 0) throw DomainError("integrate_dynamics: empty state");
    if (state.tau.size() != n) {
        throw DomainError("integrate_dynamics: tau has " +
                          std::to_string(state.tau.size()) + " entries for " +
                          std::to_string(n) + " neurons");
    }
    if (state.w.size() != n * n) {
        throw DomainError("integrate_dynamics: coupling matrix size " +
                          std::to_string(state.w.size()) + " is not " +
                          std::to_string(n) + "^2");
    }
    for (const double t : state.tau) {
        if (!(t > 0.0)) throw DomainError("integrate_dynamics: non-positive tau");
    }
    if (!(state.h > 0.0)) throw DomainError("integrate_dynamics: non-positive step size");
}

} // namespace detail

/// Explicit Euler on the relaxation equation:
///   Z <- Z + (h / tau) o (-Z + sigmoid(W Z))    (o = per component)
/// Returns the trajectory including the initial state, steps + 1 entries.
/// The update depends on h and tau only through the ratio h/tau, so
/// scaling both by the same factor reproduces the iterates bit for bit.
inline std::vector<std::vector<double>> integrate_dynamics(const DynamicsState &state,
                                                           int steps) {
    detail::validate_dynamics(state);
    if (steps < 0) throw DomainError("integrate_dynamics: negative step count");
    if (steps > kMaxDynamicsSteps) {
        throw DomainError("integrate_dynamics: step count " + std::to_string(steps) +
                          " exceeds cap " + std::to_string(kMaxDynamicsSteps));
    }
    const int n = state.dim();
    std::vector<std::vector<double>> trajectory;
    trajectory.reserve(static_cast<std::size_t>(steps) + 1);
    trajectory.push_back(state.z);

    std::vector<double> z = state.z;
    std::vector<double> next(static_cast<std::size_t>(n));
    for (int s = 0; s < steps; ++s) {
        for (int i = 0; i < n; ++i) {
            double drive = 0.0;
            for (int j = 0; j < n; ++j) {
                drive += state.w[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                                 static_cast<std::size_t>(j)] *
                         z[static_cast<std::size_t>(j)];
            }
            const double zi = z[static_cast<std::size_t>(i)];
            next[static_cast<std::size_t>(i)] =
                zi + (state.h / state.tau[static_cast<std::size_t>(i)]) *
                         (-zi + sigmoid(drive));
        }
        for (int i = 0; i < n; ++i) {
            if (!std::isfinite(next[static_cast<std::size_t>(i)])) {
                throw NumericError("integrate_dynamics: non-finite value at step " +
                                   std::to_string(s + 1));
            }
        }
        z = next;
        trajectory.push_back(z);
    }
    return trajectory;
}

} // namespace qperc
