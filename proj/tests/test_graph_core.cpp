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

#include <set>

#include "doctest.h"
#include "gbs/distribution.hpp"
#include "gbs/graph.hpp"
#include "gbs/rng.hpp"
#include "test_support.hpp"

using namespace gbs;

TEST_CASE("graph rejects loops, duplicates and bad weights") {
    Graph g(3);
    CHECK(g.add_edge(0, 1) == 0);
    CHECK(g.add_edge(1, 2, 2.5) == 1);
    CHECK_THROWS_AS(g.add_edge(1, 1), Error);
    CHECK_THROWS_AS(g.add_edge(1, 0), Error);
    CHECK_THROWS_AS(g.add_edge(0, 3), Error);
    CHECK_THROWS_AS(g.add_edge(0, 2, 0.0), Error);
    CHECK_THROWS_AS(g.add_edge(0, 2, -1.0), Error);
    CHECK(g.edge_count() == 2);
    CHECK(g.weight(2, 1) == 2.5);
    CHECK(g.weight(0, 2) == 0.0);
    CHECK(g.max_weight_or_one() == 2.5);
    CHECK(Graph(2).max_weight_or_one() == 1.0);
}

TEST_CASE("adjacency is symmetric with weights") {
    Graph g(3);
    g.add_edge(0, 2, 3.0);
    const auto a = g.adjacency();
    CHECK(a(0, 2) == 3.0);
    CHECK(a(2, 0) == 3.0);
    CHECK(a(0, 1) == 0.0);
    CHECK(g.scaled(2.0).weight(0, 2) == 6.0);
}

TEST_CASE("matching bookkeeping") {
    const Graph g = test::path(4);
    Matching m(4);
    m.add(g, 0);
    m.add(g, 2);
    CHECK(m.is_perfect());
    CHECK(m.size() == 2);
    CHECK(m.mate(1) == 0);
    CHECK(m.contains(g, 2));
    CHECK_THROWS_AS(m.add(g, 1), Error);
    m.remove(g, 0);
    CHECK(m.is_near_perfect());
    CHECK(m.unmatched_vertices() == std::vector<int>{0, 1});
    CHECK_THROWS_AS(m.remove(g, 0), Error);
    CHECK(m.is_valid_in(g));

    const std::vector<int> clash = {0, 1};
    CHECK_THROWS_AS(Matching::from_edges(g, clash), Error);
    const std::vector<int> ok = {2, 0};
    CHECK(Matching::from_edges(g, ok).edge_ids() == std::vector<int>{0, 2});
}

TEST_CASE("matching weight is the edge product") {
    Graph g(4);
    g.add_edge(0, 1, 2.0);
    g.add_edge(2, 3, 3.5);
    const std::vector<int> ids = {0, 1};
    CHECK(Matching::from_edges(g, ids).weight(g) == doctest::Approx(7.0));
    CHECK(Matching(4).weight(g) == 1.0);
}

TEST_CASE("vertex subsets are sorted and deduplicated") {
    const VertexSubset s({3, 1, 3, 0});
    CHECK(std::vector<int>(s.members().begin(), s.members().end()) == std::vector<int>{0, 1, 3});
    CHECK(s.contains(3));
    CHECK_FALSE(s.contains(2));
}

TEST_CASE("derived seeds are distinct and stable") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 1000; ++i) {
        seen.insert(derive_seed(42, i));
    }
    CHECK(seen.size() == 1000);
    CHECK(derive_seed(42, 7) == derive_seed(42, 7));
    CHECK(derive_seed(42, 7) != derive_seed(43, 7));
}

TEST_CASE("rng helpers stay in range and are reproducible") {
    Rng a(9);
    Rng b(9);
    for (int i = 0; i < 1000; ++i) {
        const double u = a.uniform();
        CHECK(u == b.uniform());
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        const auto x = a.below(7);
        CHECK(x == b.below(7));
        CHECK(x < 7);
    }
}

TEST_CASE("rng below is close to uniform") {
    Rng rng(1);
    std::vector<int> counts(5, 0);
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        ++counts[rng.below(5)];
    }
    for (int c : counts) {
        CHECK(std::abs(c - n / 5) < 5 * std::sqrt(n * 0.2 * 0.8));
    }
}

TEST_CASE("distribution tables normalise and compare") {
    const auto p = DistributionTable::from_weights(OutcomeKind::Subset, {{{}, 1.0}, {{0, 1}, 3.0}, {{0, 2}, 0.0}});
    CHECK(p.size() == 2);
    CHECK(p.normalizer() == 4.0);
    CHECK(p.probability({0, 1}) == doctest::Approx(0.75));
    CHECK(p.probability({0, 2}) == 0.0);
    CHECK(p.total() == doctest::Approx(1.0));

    const auto q = DistributionTable::from_weights(OutcomeKind::Subset, {{{}, 1.0}, {{1, 2}, 1.0}});
    // |0.25-0.5| + 0.75 + 0.5 = 1.5
    CHECK(tv_distance(p, q) == doctest::Approx(0.75));
    CHECK(max_abs_deviation(p, q) == doctest::Approx(0.75));
    CHECK(tv_distance(p, p) == 0.0);

    CHECK_THROWS_AS(DistributionTable::from_weights(OutcomeKind::Subset, {{{}, 0.0}}), Error);
    CHECK_THROWS_AS(DistributionTable::from_probabilities(OutcomeKind::Subset, {{{}, 0.5}}, 1.0), Error);
}

TEST_CASE("empirical distribution counts frequencies") {
    const std::vector<OutcomeKey> samples = {{1}, {1}, {2}, {1}};
    const auto t = empirical_distribution(OutcomeKind::Occupancy, samples);
    CHECK(t.probability({1}) == doctest::Approx(0.75));
    CHECK(t.probability({2}) == doctest::Approx(0.25));
    CHECK_THROWS_AS(empirical_distribution(OutcomeKind::Occupancy, std::vector<OutcomeKey>{}), Error);
}
