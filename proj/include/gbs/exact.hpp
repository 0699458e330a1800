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

// Brute-force target distributions. Everything here is exponential-time and
// capped by OracleLimits; it exists to be the ground truth the samplers are
// checked against.

#pragma once

#include <vector>

#include "gbs/constructions.hpp"
#include "gbs/distribution.hpp"
#include "gbs/exact_arith.hpp"
#include "gbs/graph.hpp"

namespace gbs {

/// Phi_{m,n} in lexicographically decreasing order ((n,0,..,0) first).
/// Throws SizeLimit if |Phi_{m,n}| exceeds `limit`.
std::vector<OccupancyVector> occupancy_vectors(int m, int n, std::size_t limit = default_limits().occupancy_max);

/// |Phi_{m,n}| = C(n + m - 1, m - 1), saturating at SIZE_MAX.
std::size_t occupancy_count(int m, int n);

/// mu(S) proportional to c^{2|S|} Haf(A_S)^2 over vertex subsets S, where A is
/// the weighted adjacency matrix of `g`. Only outcomes of non-zero weight are
/// listed; the empty set always is.
DistributionTable exact_gbs_distribution(const Graph &g, double c, const OracleLimits &limits = default_limits());

/// mu(M) proportional to prod_{e in M} lambda_e over every matching of `g`,
/// keyed by sorted edge ids.
DistributionTable exact_matching_distribution(const Graph &g, const OracleLimits &limits = default_limits());

/// mu(z) proportional to Perm(A_z)^2 / prod z_i! over Phi_{m,n}.
/// Throws ZeroNormalizer when every permanent vanishes.
DistributionTable exact_bs_distribution(const Matrix<double> &a, const OracleLimits &limits = default_limits());

/// nu(z) proportional to prod C(k, z_i) Perm(A_z)^2: the closed form for the
/// gadget's perfect-matching distribution projected to occupancies.
DistributionTable gadget_closed_form(const Matrix<double> &a, int k, const OracleLimits &limits = default_limits());

/// nu by enumerating the gadget's perfect matchings, weighting each by its
/// edge-weight product and projecting with extract_occupancy.
DistributionTable gadget_by_enumeration(const BipartiteGadget &gadget, const OracleLimits &limits = default_limits());

/// The gadget's occupancy distribution. When the gadget is small enough for
/// both routes they are computed and required to agree to 1e-10 relative;
/// otherwise the closed form alone is used.
DistributionTable exact_gadget_distribution(const BipartiteGadget &gadget,
                                            const OracleLimits &limits = default_limits());

/// prod_i prod_{j < z_i} (1 - j/k): the gadget's k^{-n}-scaled weight for z
/// relative to the boson-sampling weight of z.
double gadget_bias_factor(const OccupancyVector &z, int k);

}  // namespace gbs
