// Copyright 2026 The gbsample Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "gbs/exact_arith.hpp"
#include "gbs/matrix.hpp"

namespace gbs {

/// Hafnian of every principal submatrix, indexed by vertex bitmask.
///
/// Pairs the lowest index v of each set S with every other member u:
///   Haf(S) = sum_{u in S, u != v} A(v,u) * Haf(S \ {u,v}),
/// filled bottom-up over masks, so all 2^d values cost O(2^d * d). Odd sets
/// are 0 and the empty set is 1.
template <typename T>
std::vector<T> subset_hafnians(const Matrix<T> &a) {
    const std::size_t d = a.rows();
    const std::size_t count = std::size_t{1} << d;
    std::vector<T> haf(count, T(0));
    haf[0] = T(1);
    for (std::uint32_t s = 1; s < count; ++s) {
        if (std::popcount(s) % 2 != 0) {
            continue;
        }
        const auto v = static_cast<std::size_t>(std::countr_zero(s));
        std::uint32_t rest = s & (s - 1);
        T sum(0);
        for (std::uint32_t r = rest; r != 0; r &= r - 1) {
            const auto u = static_cast<std::size_t>(std::countr_zero(r));
            const T &entry = a(v, u);
            if (entry != T(0)) {
                sum += entry * haf[rest & ~(std::uint32_t{1} << u)];
            }
        }
        haf[s] = sum;
    }
    return haf;
}

/// Hafnian of a symmetric matrix (0 for odd dimension, 1 for 0x0).
/// Integer-valued inputs use exact arithmetic. Throws NotSymmetric when
/// |a - a^T| > 1e-12 anywhere, SizeLimit past `limits.hafnian_max_dim`.
double hafnian(const Matrix<double> &a, const OracleLimits &limits = default_limits());

Rational hafnian_exact(const Matrix<double> &a, const OracleLimits &limits = default_limits());

}  // namespace gbs
