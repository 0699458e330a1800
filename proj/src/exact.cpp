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

#include "gbs/exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gbs/hafnian.hpp"
#include "gbs/matchings.hpp"
#include "gbs/permanent.hpp"

namespace gbs {

std::size_t occupancy_count(int m, int n) {
    if (m <= 0 || n < 0) {
        return 0;
    }
    // C(n + m - 1, n), built incrementally so every partial value is an
    // integer; saturates instead of overflowing.
    constexpr std::size_t cap = std::numeric_limits<std::size_t>::max();
    std::size_t c = 1;
    for (int i = 1; i <= n; ++i) {
        const auto num = static_cast<std::size_t>(m - 1 + i);
        if (c > cap / num) {
            return cap;
        }
        c = c * num / static_cast<std::size_t>(i);
    }
    return c;
}

namespace {

void fill_occupancies(int row, int remaining, std::vector<int> &z, std::vector<OccupancyVector> &out) {
    const int m = static_cast<int>(z.size());
    if (row == m - 1) {
        z[static_cast<std::size_t>(row)] = remaining;
        out.push_back({z});
        return;
    }
    for (int take = remaining; take >= 0; --take) {
        z[static_cast<std::size_t>(row)] = take;
        fill_occupancies(row + 1, remaining - take, z, out);
    }
    z[static_cast<std::size_t>(row)] = 0;
}

double factorial(int n) {
    double f = 1;
    for (int i = 2; i <= n; ++i) {
        f *= i;
    }
    return f;
}

double binomial(int k, int z) {
    if (z < 0 || z > k) {
        return 0;
    }
    double b = 1;
    for (int j = 0; j < z; ++j) {
        b = b * (k - j) / (j + 1);
    }
    return b;
}

}  // namespace

std::vector<OccupancyVector> occupancy_vectors(int m, int n, std::size_t limit) {
    require(m >= 1 && n >= 0, ErrorKind::Dimension, "occupancy vectors need m >= 1 and n >= 0");
    const std::size_t count = occupancy_count(m, n);
    require(count <= limit, ErrorKind::SizeLimit,
            "|Phi_{m,n}| = " + std::to_string(count) + " exceeds cap " + std::to_string(limit));
    std::vector<OccupancyVector> out;
    out.reserve(count);
    std::vector<int> z(static_cast<std::size_t>(m), 0);
    fill_occupancies(0, n, z, out);
    return out;
}

DistributionTable exact_gbs_distribution(const Graph &g, double c, const OracleLimits &limits) {
    require(std::isfinite(c) && c > 0, ErrorKind::Validation, "c must be a positive real");
    const int n = g.vertex_count();
    require(n <= limits.gbs_max_vertices, ErrorKind::SizeLimit,
            "exact GBS distribution on " + std::to_string(n) + " vertices exceeds cap " +
                std::to_string(limits.gbs_max_vertices));
    const auto haf = subset_hafnians(g.adjacency());
    std::map<OutcomeKey, double> weights;
    for (std::uint32_t s = 0; s < haf.size(); ++s) {
        if (haf[s] == 0) {
            continue;
        }
        OutcomeKey key;
        for (std::uint32_t r = s; r != 0; r &= r - 1) {
            key.push_back(std::countr_zero(r));
        }
        weights[key] = std::pow(c, 2.0 * static_cast<double>(key.size())) * haf[s] * haf[s];
    }
    return DistributionTable::from_weights(OutcomeKind::Subset, weights);
}

DistributionTable exact_matching_distribution(const Graph &g, const OracleLimits &limits) {
    std::map<OutcomeKey, double> weights;
    for_each_matching(
        g, [&](const Matching &m) { weights[key_of(m)] = m.weight(g); }, limits);
    return DistributionTable::from_weights(OutcomeKind::Matching, weights);
}

DistributionTable exact_bs_distribution(const Matrix<double> &a, const OracleLimits &limits) {
    const int m = static_cast<int>(a.rows());
    const int n = static_cast<int>(a.cols());
    require(m >= 1 && n >= 1, ErrorKind::Dimension, "matrix must be non-empty");
    std::map<OutcomeKey, double> weights;
    for (const auto &z : occupancy_vectors(m, n, limits.occupancy_max)) {
        const double perm = permanent(row_repeated(a, z.z), PermanentMethod::Ryser, limits);
        double denom = 1;
        for (int zi : z.z) {
            denom *= factorial(zi);
        }
        weights[z.z] = perm * perm / denom;
    }
    return DistributionTable::from_weights(OutcomeKind::Occupancy, weights);
}

DistributionTable gadget_closed_form(const Matrix<double> &a, int k, const OracleLimits &limits) {
    const int m = static_cast<int>(a.rows());
    const int n = static_cast<int>(a.cols());
    require(m >= 1 && n >= 1, ErrorKind::Dimension, "matrix must be non-empty");
    require(k >= 1, ErrorKind::Validation, "k must be positive");
    std::map<OutcomeKey, double> weights;
    for (const auto &z : occupancy_vectors(m, n, limits.occupancy_max)) {
        double mult = 1;
        for (int zi : z.z) {
            mult *= binomial(k, zi);
        }
        if (mult == 0) {
            continue;
        }
        const double perm = permanent(row_repeated(a, z.z), PermanentMethod::Ryser, limits);
        weights[z.z] = mult * perm * perm;
    }
    return DistributionTable::from_weights(OutcomeKind::Occupancy, weights);
}

DistributionTable gadget_by_enumeration(const BipartiteGadget &gadget, const OracleLimits &limits) {
    require(gadget.graph.vertex_count() <= limits.gadget_enumeration_max_vertices, ErrorKind::SizeLimit,
            "gadget with " + std::to_string(gadget.graph.vertex_count()) +
                " vertices is too large for perfect-matching enumeration");
    OracleLimits relaxed = limits;
    relaxed.matching_max_vertices = std::max(limits.matching_max_vertices, limits.gadget_enumeration_max_vertices);
    std::map<OutcomeKey, double> weights;
    for (const auto &pm : enumerate_perfect_matchings(gadget.graph, relaxed)) {
        weights[extract_occupancy(gadget, pm).z] += pm.weight(gadget.graph);
    }
    return DistributionTable::from_weights(OutcomeKind::Occupancy, weights);
}

DistributionTable exact_gadget_distribution(const BipartiteGadget &gadget, const OracleLimits &limits) {
    const bool enumerable = gadget.graph.vertex_count() <= limits.gadget_enumeration_max_vertices;
    const bool closed_ok = occupancy_count(gadget.rows, gadget.cols) <= limits.occupancy_max;
    require(enumerable || closed_ok, ErrorKind::SizeLimit, "gadget too large for either exact route");
    if (!enumerable) {
        return gadget_closed_form(gadget.matrix, gadget.k, limits);
    }
    auto by_enum = gadget_by_enumeration(gadget, limits);
    if (!closed_ok) {
        return by_enum;
    }
    auto closed = gadget_closed_form(gadget.matrix, gadget.k, limits);
    const auto agree = [](double x, double y) { return std::abs(x - y) <= 1e-10 * std::max(std::abs(x), std::abs(y)); };
    bool ok = closed.size() == by_enum.size() && agree(closed.normalizer(), by_enum.normalizer());
    for (const auto &[key, p] : closed.entries()) {
        ok = ok && agree(p, by_enum.probability(key));
    }
    if (!ok) {
        throw std::logic_error("gadget distribution: enumeration and closed form disagree");
    }
    return closed;
}

double gadget_bias_factor(const OccupancyVector &z, int k) {
    require(k >= 1, ErrorKind::Validation, "k must be positive");
    double f = 1;
    for (int zi : z.z) {
        for (int j = 0; j < zi; ++j) {
            f *= 1.0 - static_cast<double>(j) / k;
        }
    }
    return f;
}

}  // namespace gbs
