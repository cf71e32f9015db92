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

// The headline asymptotic ratio N^2 / log N between a cubic classical
// SVD and an N log N factorization, evaluated as plain arithmetic.

#pragma once

#include <cmath>
#include <string>

#include "qperc/errors.hpp"

namespace qperc {

enum class LogBase { two, e, ten };

inline const char *to_string(LogBase b) {
    switch (b) {
        case LogBase::two: return "2";
        case LogBase::e: return "e";
        default: return "10";
    }
}

/// N^2 / log_base(N). N = 1 would divide by log 1 = 0 and is rejected.
inline double speedup_report(long long n, LogBase base) {
    if (n <= 1) {
        throw DomainError("speedup_report: N must be at least 2, got " +
                          std::to_string(n));
    }
    const double nd = static_cast<double>(n);
    double log_n = 0.0;
    switch (base) {
        case LogBase::two: log_n = std::log2(nd); break;
        case LogBase::e: log_n = std::log(nd); break;
        case LogBase::ten: log_n = std::log10(nd); break;
    }
    return nd * nd / log_n;
}

} // namespace qperc
