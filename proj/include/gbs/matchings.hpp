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

#include <cstdint>
#include <functional>
#include <vector>

#include "gbs/exact_arith.hpp"
#include "gbs/graph.hpp"

namespace gbs {

/// All matchings of `g`, grouped by size: result[k] holds every k-edge
/// matching exactly once. Throws SizeLimit past
/// `limits.matching_max_vertices`.
std::vector<std::vector<Matching>> enumerate_matchings(const Graph &g, const OracleLimits &limits = default_limits());

/// Calls `visit` once per matching without materialising the list.
void for_each_matching(const Graph &g, const std::function<void(const Matching &)> &visit,
                       const OracleLimits &limits = default_limits());

/// Every perfect matching of `g` (empty when |V| is odd).
std::vector<Matching> enumerate_perfect_matchings(const Graph &g, const OracleLimits &limits = default_limits());

/// Z_k = total weight of k-edge matchings, for k = 0 .. (largest matching
/// size). Z_0 = 1.
template <typename T>
struct PartitionProfileT {
    std::vector<T> z_by_size;
    T total{0};

    /// Z_k, reading sizes beyond the largest matching as 0.
    T at(std::size_t k) const {
        return k < z_by_size.size() ? z_by_size[k] : T(0);
    }
};

using PartitionProfile = PartitionProfileT<double>;
using ExactPartitionProfile = PartitionProfileT<Rational>;

/// Computed by the vertex-elimination recursion on the matching polynomial
/// (independent of `enumerate_matchings`, which tests use as the oracle).
PartitionProfile partition_profile(const Graph &g, const OracleLimits &limits = default_limits());
ExactPartitionProfile partition_profile_exact(const Graph &g, const OracleLimits &limits = default_limits());

/// m_k = number of k-edge matchings, exactly.
std::vector<BigInt> matching_counts(const Graph &g, const OracleLimits &limits = default_limits());

}  // namespace gbs
