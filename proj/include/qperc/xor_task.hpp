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

// The XOR benchmark task: truth table and a seeded sampler shared by both
// trainers so their draws are comparable run to run.

#pragma once

#include <array>
#include <cstdint>
#include <random>

namespace qperc {

struct XorSample {
    int a = 0;
    int b = 0;
    int label = 0;
};

inline constexpr std::array<XorSample, 4> kXorTable{{
    {0, 0, 0},
    {0, 1, 1},
    {1, 0, 1},
    {1, 1, 0},
}};

/// Uniform draws over the four input pairs. Uses the two low bits of the
/// raw engine output so the sequence is pinned by the seed alone, with no
/// dependence on library distribution internals.
class XorSampler {
  public:
    explicit XorSampler(std::uint64_t seed) : rng_(seed) {}

    XorSample next() {
        const std::uint64_t bits = rng_() & 3u;
        const int a = static_cast<int>(bits & 1u);
        const int b = static_cast<int>((bits >> 1) & 1u);
        return {a, b, a ^ b};
    }

  private:
    std::mt19937_64 rng_;
};

} // namespace qperc
