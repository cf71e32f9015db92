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

#pragma once

#include <cstdint>
#include <random>

namespace qperc {

// Uniform doubles are derived from the raw engine output instead of
// std::uniform_real_distribution, whose draw sequence is
// implementation-defined. Seeded runs must replay bit-identically.

/// Uniform double in [0, 1) from the top 53 bits of one engine draw.
inline double uniform_unit(std::mt19937_64 &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform double in [lo, hi).
inline double uniform_in(std::mt19937_64 &rng, double lo, double hi) {
    return lo + (hi - lo) * uniform_unit(rng);
}

} // namespace qperc
