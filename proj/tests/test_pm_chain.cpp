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

#include <cmath>

#include "doctest.h"
#include "gbs/bs_sampler.hpp"
#include "gbs/exact.hpp"
#include "gbs/matchings.hpp"
#include "gbs/permanent.hpp"
#include "gbs/pm_chain.hpp"
#include "gbs/verify.hpp"
#include "test_linalg.hpp"
#include "test_support.hpp"

using namespace gbs;

namespace {

// Left vertices 0..p-1 (rows), right p..2p-1 (columns).
BipartiteGraph from_biadjacency(const Matrix<double> &b) {
    const auto p = static_cast<int>(b.rows());
    Graph g(2 * p);
    std::vector<Side> side(static_cast<std::size_t>(2 * p), Side::Right);
    for (int i = 0; i < p; ++i) {
        side[static_cast<std::size_t>(i)] = Side::Left;
        for (int j = 0; j < p; ++j) {
            if (b(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) != 0) {
                g.add_edge(i, p + j, b(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
            }
        }
    }
    return BipartiteGraph(std::move(g), std::move(side));
}

Matrix<double> minor(const Matrix<double> &b, std::size_t row, std::size_t col) {
    Matrix<double> out(b.rows() - 1, b.cols() - 1);
    for (std::size_t r = 0, rr = 0; r < b.rows(); ++r) {
        if (r == row) {
            continue;
        }
        for (std::size_t c = 0, cc = 0; c < b.cols(); ++c) {
            if (c != col) {
                out(rr, cc++) = b(r, c);
            }
        }
        ++rr;
    }
    return out;
}

Matrix<double> random_biadjacency(std::size_t p, Rng &rng, double density, bool weighted) {
    Matrix<double> b(p, p);
    for (std::size_t r = 0; r < p; ++r) {
        for (std::size_t c = 0; c < p; ++c) {
            if (rng.uniform() < density) {
                b(r, c) = weighted ? 0.5 * static_cast<double>(1 + rng.below(5)) : 1.0;
            }
        }
    }
    return b;
}

// Row-stochastic matrix power applied to a point mass.
std::vector<double> law_after(const Matrix<double> &p, std::size_t start, int steps) {
    std::vector<double> x(p.rows(), 0.0);
    x[start] = 1.0;
    for (int t = 0; t < steps; ++t) {
        std::vector<double> y(p.rows(), 0.0);
        for (std::size_t i = 0; i < p.rows(); ++i) {
            for (std::size_t j = 0; j < p.cols(); ++j) {
                y[j] += x[i] * p(i, j);
            }
        }
        x = y;
    }
    return x;
}

PmState state_of(const BipartiteGraph &bg, const Matching &m) {
    PmState s{m, -1, -1};
    for (int v : m.unmatched_vertices()) {
        (bg.side(v) == Side::Left ? s.hole_left : s.hole_right) = v;
    }
    return s;
}

}  // namespace

TEST_CASE("bipartite graph validation") {
    Graph g(3);
    g.add_edge(0, 1);
    CHECK_THROWS_AS(BipartiteGraph(g, {Side::Left, Side::Right, Side::Left}), Error);
    Graph h(2);
    h.add_edge(0, 1);
    CHECK_THROWS_AS(BipartiteGraph(h, {Side::Left, Side::Left}), Error);
    const BipartiteGraph bg = BipartiteGraph::from_graph(test::cycle(4));
    CHECK(bg.part_size() == 2);
    CHECK(bg.side(0) == Side::Left);
    CHECK(bg.position(2) == 1);
    CHECK_THROWS_AS(BipartiteGraph::from_graph(test::cycle(3)), Error);
}

TEST_CASE("hole weights for K2, K22 and the identity") {
    const BipartiteGraph k2 = BipartiteGraph::from_graph(test::path(2));
    const HoleWeights w1 = compute_hole_weights_exact(k2);
    CHECK(w1.at(k2, 0, 1) == 1.0);

    const BipartiteGraph k22 = from_biadjacency(Matrix<double>(2, 2, 1.0));
    const HoleWeights w2 = compute_hole_weights_exact(k22);
    for (int l = 0; l < 2; ++l) {
        for (int r = 2; r < 4; ++r) {
            CHECK(w2.at(k22, l, r) == 2.0);
        }
    }
    CHECK(w2.support_size() == 4);

    const BipartiteGraph id = from_biadjacency(Matrix<double>{{1, 0}, {0, 1}});
    const HoleWeights w3 = compute_hole_weights_exact(id);
    CHECK(w3.at(id, 0, 2) == 1.0);
    CHECK_FALSE(w3.has(id, 0, 3));
    CHECK(w3.support_size() == 2);

    CHECK_THROWS_AS(compute_hole_weights_exact(from_biadjacency(Matrix<double>{{1, 1}, {0, 0}})), Error);
}

TEST_CASE("hole weights against permanent ratios by row expansion") {
    Rng rng(67);
    for (int trial = 0; trial < 30; ++trial) {
        const auto p = static_cast<std::size_t>(1 + rng.below(5));
        const Matrix<double> b = random_biadjacency(p, rng, 0.7, true);
        const double perm = test::permanent_by_expansion(b);
        if (perm == 0) {
            continue;
        }
        const BipartiteGraph bg = from_biadjacency(b);
        const HoleWeights hw = compute_hole_weights_exact(bg);
        for (std::size_t r = 0; r < p; ++r) {
            for (std::size_t c = 0; c < p; ++c) {
                const double sub = test::permanent_by_expansion(minor(b, r, c));
                const double got = hw.at_position(static_cast<int>(r), static_cast<int>(c));
                CHECK(got == doctest::Approx(sub > 0 ? perm / sub : 0.0).epsilon(1e-12));
                CHECK((sub > 0) == has_near_perfect_support(bg, static_cast<int>(r), static_cast<int>(p + c)));
            }
        }
        const Matching pm = find_perfect_matching(bg);
        CHECK(pm.is_perfect());
        CHECK(pm.is_valid_in(bg.graph()));
    }
}

TEST_CASE("structured gadget hole weights equal the permanent-minor weights") {
    const std::vector<std::pair<Matrix<double>, int>> cases = {
        {Matrix<double>{{1.0}}, 1},           {Matrix<double>{{1.0}}, 4},
        {Matrix<double>{{1.0}, {2.0}}, 2},    {Matrix<double>{{1, 2}, {0, 1}}, 2},
        {Matrix<double>(3, 2, 1.0), 2},       {Matrix<double>{{1, 0}, {2, 1}, {0, 2}}, 1},
        {Matrix<double>{{2.0, 1.0}}, 2},      {Matrix<double>{{1, 1, 1}, {1, 2, 0}}, 2},
        {Matrix<double>{{1.0}, {0.5}, {2.0}}, 3},
    };
    for (const auto &[a, k] : cases) {
        const BipartiteGadget gd = bs_gadget(a, k);
        const BipartiteGraph bg = BipartiteGraph::from_gadget(gd);
        REQUIRE(bg.part_size() <= 12);
        const HoleWeights generic = compute_hole_weights_exact(bg);
        const HoleWeights structured = gadget_hole_weights_exact(gd, bg);
        CHECK(generic.support_size() == structured.support_size());
        CHECK(HoleWeights::max_ratio(generic, structured) == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("proposal ratios from perfect and near-perfect states") {
    Matrix<double> b(2, 2, 1.0);
    b(0, 0) = 2.0;
    const BipartiteGraph bg = from_biadjacency(b);
    const HoleWeights hw = compute_hole_weights_exact(bg);
    const Graph &g = bg.graph();
    const int e00 = *g.find_edge(0, 2);
    const int e11 = *g.find_edge(1, 3);
    const std::vector<int> ids = {e00, e11};
    PmState s = perfect_state(Matching::from_edges(g, ids));
    CHECK(pm_state_weight(bg, hw, s) == 2.0);
    // Perm = 3; removing (0,0) leaves minor 1.
    const PmMove rem = propose_pm_move(bg, hw, s, e00);
    CHECK(rem.kind == MoveKind::Remove);
    CHECK(rem.ratio == doctest::Approx(3.0 / 2.0 * 2.0 / 4.0));
    apply_pm_move(bg, s, rem);
    CHECK(s.hole_left == 0);
    CHECK(s.hole_right == 2);
    CHECK(pm_state_weight(bg, hw, s) == doctest::Approx(3.0));
    const PmMove add = propose_pm_move(bg, hw, s, e00);
    CHECK(add.kind == MoveKind::Add);
    CHECK(add.ratio == doctest::Approx(2.0 / 3.0 * 4.0 / 2.0));
    const PmMove slide = propose_pm_move(bg, hw, s, *g.find_edge(0, 3));
    CHECK(slide.kind == MoveKind::Slide);
    CHECK(slide.new_hole_left == 1);
    CHECK(slide.new_hole_right == 2);
    CHECK(propose_pm_move(bg, hw, s, e11).kind == MoveKind::Hold);
}

TEST_CASE("the unit K22 chain: stationary law and conditioning") {
    const BipartiteGraph bg = from_biadjacency(Matrix<double>(2, 2, 1.0));
    const HoleWeights hw = compute_hole_weights_exact(bg);
    const ChainMatrix cm = pm_chain_matrix(bg, hw);
    CHECK(cm.states.size() == 6);
    const auto solve = test::stationary(cm.p, cm.weight);
    CHECK(solve.invariant_dim == 1);
    // Perfect weight 1 each, near-perfect 1 * 2 each: total 2 + 8.
    double perfect = 0;
    for (std::size_t i = 0; i < cm.states.size(); ++i) {
        const double want = cm.states[i].is_perfect() ? 0.1 : 0.2;
        CHECK(solve.pi[i] == doctest::Approx(want).epsilon(1e-10));
        perfect += cm.states[i].is_perfect() ? solve.pi[i] : 0.0;
    }
    CHECK(perfect == doctest::Approx(0.2));
}

TEST_CASE("PM chain reversibility and conditioned law on random bipartite graphs") {
    Rng rng(71);
    int tested = 0;
    while (tested < 40) {
        const auto p = static_cast<std::size_t>(1 + rng.below(4));
        const Matrix<double> b = random_biadjacency(p, rng, 0.7, tested % 2 == 0);
        const BipartiteGraph bg = from_biadjacency(b);
        if (permanent(b) == 0) {
            continue;
        }
        ++tested;
        const HoleWeights hw = compute_hole_weights_exact(bg);
        const ChainMatrix cm = pm_chain_matrix(bg, hw);
        CHECK(test::detailed_balance_gap(cm.p, cm.weight) < 1e-12);
        const auto solve = test::stationary(cm.p, cm.weight);
        CHECK(solve.invariant_dim == 1);
        const auto target = exact_matching_distribution(bg.graph());
        double perfect_mass = 0;
        double total_weight = 0;
        for (std::size_t i = 0; i < cm.states.size(); ++i) {
            total_weight += cm.weight[i];
        }
        std::map<OutcomeKey, double> perfect_pi;
        for (std::size_t i = 0; i < cm.states.size(); ++i) {
            CHECK(std::abs(solve.pi[i] - cm.weight[i] / total_weight) < 1e-10);
            if (cm.states[i].is_perfect()) {
                perfect_mass += solve.pi[i];
                perfect_pi[cm.states[i].edge_ids()] = solve.pi[i];
            }
        }
        CHECK(perfect_mass >= 1.0 / (static_cast<double>(p * p) + 1.0) - 1e-12);
        // Conditioned on perfect, the law is prod lambda_e / Perm(B).
        const double perm = permanent(b);
        for (const auto &[ids, pi] : perfect_pi) {
            const std::vector<int> key = ids;
            double w = 1.0;
            for (int id : key) {
                w *= bg.graph().edge(id).weight;
            }
            CHECK(std::abs(pi / perfect_mass - w / perm) < 1e-10);
        }
    }
}

TEST_CASE("one PM step follows the transition row") {
    Matrix<double> b(3, 3, 1.0);
    b(0, 1) = 0;
    b(2, 2) = 2.0;
    const BipartiteGraph bg = from_biadjacency(b);
    const HoleWeights hw = compute_hole_weights_exact(bg);
    const ChainMatrix cm = pm_chain_matrix(bg, hw);
    Rng rng(73);
    const int n = 100000;
    for (std::size_t i = 0; i < cm.states.size(); i += 3) {
        if (cm.weight[i] == 0) {
            continue;
        }
        std::map<std::vector<int>, int> hits;
        for (int t = 0; t < n; ++t) {
            PmState s = state_of(bg, cm.states[i]);
            pm_chain_step(s, bg, hw, rng);
            ++hits[s.matching.edge_ids()];
        }
        for (std::size_t j = 0; j < cm.states.size(); ++j) {
            const double p = cm.p(i, j);
            const double f = hits[cm.states[j].edge_ids()] / static_cast<double>(n);
            CHECK(std::abs(f - p) <= 5 * std::sqrt(p * (1 - p) / n) + 1e-12);
        }
    }
}

TEST_CASE("event-driven runner has the t-step law of the chain") {
    Matrix<double> b(3, 3, 1.0);
    b(1, 0) = 0;
    b(0, 0) = 3.0;
    const BipartiteGraph bg = from_biadjacency(b);
    const HoleWeights hw = compute_hole_weights_exact(bg).scaled(1.0 / 7.0);
    const ChainMatrix cm = pm_chain_matrix(bg, hw);
    std::map<std::vector<int>, std::size_t> index;
    for (std::size_t i = 0; i < cm.states.size(); ++i) {
        index[cm.states[i].edge_ids()] = i;
    }
    const Matching start = find_perfect_matching(bg);
    const std::size_t s0 = index.at(start.edge_ids());
    Rng rng(79);
    const int runs = 100000;
    for (int steps : {1, 3, 10, 40}) {
        const auto want = law_after(cm.p, s0, steps);
        std::vector<double> got(cm.states.size(), 0.0);
        for (int r = 0; r < runs; ++r) {
            PmState s = perfect_state(start);
            run_pm_chain(s, bg, hw, static_cast<std::uint64_t>(steps), rng);
            got[index.at(s.matching.edge_ids())] += 1.0 / runs;
        }
        for (std::size_t j = 0; j < got.size(); ++j) {
            CHECK(std::abs(got[j] - want[j]) <= 5 * std::sqrt(want[j] * (1 - want[j]) / runs) + 1e-12);
        }
    }
}

TEST_CASE("unique perfect matching is always returned") {
    const BipartiteGraph bg = BipartiteGraph::from_graph(test::path(4));
    PmSamplerConfig config;
    config.chain.step_constant = 0.05;
    PerfectMatchingSampler sampler(bg, compute_hole_weights_exact(bg), 0.1, config);
    Rng rng(83);
    const std::vector<int> want = {0, 2};
    for (int i = 0; i < 500; ++i) {
        CHECK(sampler.sample(rng).edge_ids() == want);
    }
    CHECK(sampler.successes() == 500);
}

TEST_CASE("weighted K22 perfect matchings at 4:1") {
    Matrix<double> b(2, 2, 1.0);
    b(0, 0) = 2.0;
    b(1, 1) = 2.0;
    const BipartiteGraph bg = from_biadjacency(b);
    PmSamplerConfig config;
    PerfectMatchingSampler sampler(bg, compute_hole_weights_exact(bg), 0.1, config);
    Rng rng(89);
    const int n = 100000;
    int diagonal = 0;
    const int e00 = *bg.graph().find_edge(0, 2);
    for (int i = 0; i < n; ++i) {
        diagonal += sampler.sample(rng).contains(bg.graph(), e00) ? 1 : 0;
    }
    const double f = diagonal / static_cast<double>(n);
    CHECK(std::abs(f - 0.8) <= 3 * std::sqrt(0.8 * 0.2 / n));
}

TEST_CASE("non-persistent sampler restarts from the fixed matching") {
    Matrix<double> b(3, 3, 1.0);
    const BipartiteGraph bg = from_biadjacency(b);
    PmSamplerConfig config;
    config.persistent = false;
    PerfectMatchingSampler sampler(bg, compute_hole_weights_exact(bg), 0.1, config);
    Rng rng(97);
    std::map<OutcomeKey, int> counts;
    const int n = 30000;
    for (int i = 0; i < n; ++i) {
        ++counts[sampler.sample(rng).edge_ids()];
    }
    CHECK(counts.size() == 6);
    for (const auto &[key, c] : counts) {
        CHECK(std::abs(c / static_cast<double>(n) - 1.0 / 6.0) < 0.03);
    }
}

TEST_CASE("the 3x2 all-ones gadget with k = 2 through the PM sampler") {
    const BipartiteGadget gd = bs_gadget(Matrix<double>(3, 2, 1.0), 2);
    const BipartiteGraph bg = BipartiteGraph::from_gadget(gd);
    PmSamplerConfig config;
    config.chain.step_constant = 0.01;
    const double eps = 0.1;
    PerfectMatchingSampler sampler(bg, compute_hole_weights_exact(bg), eps, config);
    Rng rng(101);
    std::vector<OutcomeKey> keys;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        keys.push_back(key_of(extract_occupancy(gd, sampler.sample(rng))));
    }
    const auto target = exact_gadget_distribution(gd);
    CHECK(tv_distance(empirical_distribution(OutcomeKind::Occupancy, keys), target) <=
          tv_allowance(eps, target.size(), n));
}

TEST_CASE("sampler error paths") {
    Graph g(4);
    g.add_edge(0, 1);
    g.add_edge(2, 1);
    g.add_edge(2, 3);
    g.add_edge(0, 3);
    const BipartiteGraph bg = BipartiteGraph::from_graph(g);
    PmSamplerConfig config;
    config.retry_budget = 2;
    config.hole_scale = 1e12;
    config.persistent = false;
    config.chain.max_steps_override = 1000;
    PerfectMatchingSampler sampler(bg, compute_hole_weights_exact(bg), 0.1, config);
    Rng rng(103);
    try {
        sampler.sample(rng);
        FAIL("expected RetryBudgetExceeded");
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::RetryBudgetExceeded);
    }
    const BipartiteGraph none = from_biadjacency(Matrix<double>{{1, 1}, {0, 0}});
    CHECK_THROWS_AS(find_perfect_matching(none), Error);
    CHECK_THROWS_AS(sample_perfect_matching(none, 0.1, PmSamplerConfig{}), Error);
}

TEST_CASE("annealed hole weights") {
    AnnealConfig config;
    config.stages = 6;
    config.steps_per_stage = 100000;
    SUBCASE("unit K22 within a factor 2 of the exact value 2") {
        const BipartiteGraph bg = from_biadjacency(Matrix<double>(2, 2, 1.0));
        const HoleWeights est = anneal_hole_weights(bg, config);
        CHECK(est.mode() == HoleWeightMode::Annealed);
        CHECK(HoleWeights::max_ratio(est, compute_hole_weights_exact(bg)) <= 2.0);
    }
    SUBCASE("path with a unique perfect matching") {
        const BipartiteGraph bg = BipartiteGraph::from_graph(test::path(4));
        const HoleWeights est = anneal_hole_weights(bg, config);
        const HoleWeights exact = compute_hole_weights_exact(bg);
        CHECK(est.support_size() == exact.support_size());
        CHECK(std::isfinite(HoleWeights::max_ratio(est, exact)));
    }
    SUBCASE("identity keeps the exact domain") {
        Matrix<double> id(3, 3);
        for (std::size_t i = 0; i < 3; ++i) {
            id(i, i) = 1.0;
        }
        const BipartiteGraph bg = from_biadjacency(id);
        const HoleWeights est = anneal_hole_weights(bg, config);
        const HoleWeights exact = compute_hole_weights_exact(bg);
        for (int l = 0; l < 3; ++l) {
            for (int r = 0; r < 3; ++r) {
                CHECK(est.has(bg, l, 3 + r) == exact.has(bg, l, 3 + r));
            }
        }
        CHECK(HoleWeights::max_ratio(est, exact) <= 2.0);
    }
    SUBCASE("weighted 3x3 within a factor 2") {
        const BipartiteGraph bg = from_biadjacency(Matrix<double>{{2, 1, 0}, {1, 1, 1}, {0, 3, 1}});
        CHECK(HoleWeights::max_ratio(anneal_hole_weights(bg, config), compute_hole_weights_exact(bg)) <= 2.0);
    }
}
