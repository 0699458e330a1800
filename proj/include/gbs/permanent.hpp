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

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "gbs/exact_arith.hpp"
#include "gbs/matrix.hpp"

namespace gbs {

/**
 * @brief Ryser's inclusion-exclusion formula with Gray-code column updates.
 *
 * Perm(A) = (-1)^n sum_{S subset [n]} (-1)^{|S|} prod_i sum_{j in S} A_ij.
 * O(2^n * n) ring operations; works for any commutative ring T.
 */
template <typename T>
T permanent_ryser(const Matrix<T> &a) {
    require(a.is_square(), ErrorKind::Dimension, "permanent needs a square matrix");
    const std::size_t n = a.rows();
    if (n == 0) {
        return T(1);
    }
    std::vector<T> row_sums(n, T(0));
    T total(0);
    std::uint64_t gray = 0;
    const std::uint64_t subsets = std::uint64_t{1} << n;
    for (std::uint64_t step = 1; step < subsets; ++step) {
        const auto col = static_cast<std::size_t>(std::countr_zero(step));
        const std::uint64_t next = gray ^ (std::uint64_t{1} << col);
        const bool added = next > gray;
        for (std::size_t i = 0; i < n; ++i) {
            if (added) {
                row_sums[i] += a(i, col);
            } else {
                row_sums[i] -= a(i, col);
            }
        }
        gray = next;
        T prod(1);
        for (std::size_t i = 0; i < n; ++i) {
            prod *= row_sums[i];
        }
        if ((n - static_cast<std::size_t>(std::popcount(gray))) % 2 == 0) {
            total += prod;
        } else {
            total -= prod;
        }
    }
    return total;
}

/// Direct sum over all n! permutations; the cross-check for Ryser.
template <typename T>
T permanent_naive(const Matrix<T> &a) {
    require(a.is_square(), ErrorKind::Dimension, "permanent needs a square matrix");
    const std::size_t n = a.rows();
    std::vector<std::size_t> sigma(n);
    std::iota(sigma.begin(), sigma.end(), std::size_t{0});
    T total(0);
    do {
        T prod(1);
        for (std::size_t i = 0; i < n; ++i) {
            prod *= a(i, sigma[i]);
        }
        total += prod;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return total;
}

enum class PermanentMethod { Ryser, Naive };

/// Permanent of a real matrix. Integer-valued inputs are evaluated in exact
/// integer arithmetic and rounded once at the end. Throws SizeLimit past the
/// configured cap for the chosen method.
double permanent(const Matrix<double> &a, PermanentMethod method = PermanentMethod::Ryser,
                 const OracleLimits &limits = default_limits());

/// Exact permanent of the (dyadic-rational) entries of `a`.
Rational permanent_exact(const Matrix<double> &a, const OracleLimits &limits = default_limits());

/// `z_i` copies of row i of `a`, stacked in row order. The result is square
/// when sum z = a.cols().
Matrix<double> row_repeated(const Matrix<double> &a, const std::vector<int> &z);

}  // namespace gbs
