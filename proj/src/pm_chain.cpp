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

#include "gbs/pm_chain.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

#include "gbs/exact.hpp"
#include "gbs/permanent.hpp"

namespace gbs {

BipartiteGraph::BipartiteGraph(Graph graph, std::vector<Side> side) : graph_(std::move(graph)), side_(std::move(side)) {
    const int n = graph_.vertex_count();
    require(static_cast<int>(side_.size()) == n, ErrorKind::Dimension, "side vector does not match vertex count");
    position_.assign(static_cast<std::size_t>(n), -1);
    for (int v = 0; v < n; ++v) {
        auto &part = side_[static_cast<std::size_t>(v)] == Side::Left ? left_ : right_;
        position_[static_cast<std::size_t>(v)] = static_cast<int>(part.size());
        part.push_back(v);
    }
    for (const Edge &e : graph_.edges()) {
        require(side_[static_cast<std::size_t>(e.u)] != side_[static_cast<std::size_t>(e.v)], ErrorKind::NotBipartite,
                "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") lies within one side");
    }
    require(left_.size() == right_.size(), ErrorKind::Validation,
            "sides are unbalanced: " + std::to_string(left_.size()) + " vs " + std::to_string(right_.size()));
}

BipartiteGraph BipartiteGraph::from_graph(Graph graph) {
    auto side = bipartition(graph);
    return BipartiteGraph(std::move(graph), std::move(side));
}

BipartiteGraph BipartiteGraph::from_gadget(const BipartiteGadget &gadget) {
    return BipartiteGraph(gadget.graph, gadget.side);
}

Matrix<double> BipartiteGraph::biadjacency() const {
    const auto p = static_cast<std::size_t>(part_size());
    Matrix<double> b(p, p);
    for (const Edge &e : graph_.edges()) {
        const int l = side(e.u) == Side::Left ? e.u : e.v;
        const int r = e.other(l);
        b(static_cast<std::size_t>(position(l)), static_cast<std::size_t>(position(r))) = e.weight;
    }
    return b;
}

HoleWeights::HoleWeights(const BipartiteGraph &bg, HoleWeightMode mode)
    : mode_(mode), part_(bg.part_size()), w_(static_cast<std::size_t>(part_) * static_cast<std::size_t>(part_), 0.0) {
}

std::size_t HoleWeights::support_size() const {
    return static_cast<std::size_t>(std::count_if(w_.begin(), w_.end(), [](double w) { return w > 0; }));
}

HoleWeights HoleWeights::scaled(double factor) const {
    require(std::isfinite(factor) && factor > 0, ErrorKind::Validation, "hole weight scale must be positive");
    HoleWeights out = *this;
    for (double &w : out.w_) {
        w *= factor;
    }
    return out;
}

double HoleWeights::max_ratio(const HoleWeights &a, const HoleWeights &b) {
    require(a.part_ == b.part_, ErrorKind::Dimension, "hole weight tables differ in size");
    double worst = 1;
    for (std::size_t i = 0; i < a.w_.size(); ++i) {
        const double x = a.w_[i];
        const double y = b.w_[i];
        if ((x > 0) != (y > 0)) {
            return std::numeric_limits<double>::infinity();
        }
        if (x > 0) {
            worst = std::max(worst, std::max(x / y, y / x));
        }
    }
    return worst;
}

namespace {

// Kuhn's augmenting-path maximum matching from the Left side. Vertices with
// `blocked[v]` set are ignored. Returns the Right mate edge of every Left
// vertex (-1 if unmatched).
class Augmenter {
   public:
    Augmenter(const BipartiteGraph &bg, const std::vector<char> &blocked)
        : bg_(bg),
          blocked_(blocked),
          left_edge_(static_cast<std::size_t>(bg.graph().vertex_count()), -1),
          right_edge_(static_cast<std::size_t>(bg.graph().vertex_count()), -1),
          seen_(static_cast<std::size_t>(bg.graph().vertex_count()), 0) {
    }

    int run() {
        int size = 0;
        for (int l : bg_.left()) {
            if (blocked_[static_cast<std::size_t>(l)]) {
                continue;
            }
            std::fill(seen_.begin(), seen_.end(), 0);
            if (augment(l)) {
                ++size;
            }
        }
        return size;
    }

    Matching matching() const {
        Matching m(bg_.graph().vertex_count());
        for (int l : bg_.left()) {
            const int e = left_edge_[static_cast<std::size_t>(l)];
            if (e >= 0) {
                m.add(bg_.graph(), e);
            }
        }
        return m;
    }

   private:
    bool augment(int l) {
        for (const Incidence &inc : bg_.graph().neighbors(l)) {
            const auto r = static_cast<std::size_t>(inc.vertex);
            if (blocked_[r] || seen_[r]) {
                continue;
            }
            seen_[r] = 1;
            const int held = right_edge_[r];
            if (held < 0 || augment(bg_.left_end(held))) {
                right_edge_[r] = inc.edge;
                left_edge_[static_cast<std::size_t>(l)] = inc.edge;
                return true;
            }
        }
        return false;
    }

    const BipartiteGraph &bg_;
    const std::vector<char> &blocked_;
    std::vector<int> left_edge_;
    std::vector<int> right_edge_;
    std::vector<char> seen_;
};

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

// Permanent of A_z restricted to every column except `skip` (-1: keep all).
double row_repeated_perm(const Matrix<double> &a, const std::vector<int> &z, int skip, const OracleLimits &limits) {
    const Matrix<double> full = row_repeated(a, z);
    if (skip < 0) {
        return permanent(full, PermanentMethod::Ryser, limits);
    }
    Matrix<double> sub(full.rows(), full.cols() - 1);
    for (std::size_t r = 0; r < full.rows(); ++r) {
        std::size_t c2 = 0;
        for (std::size_t c = 0; c < full.cols(); ++c) {
            if (static_cast<int>(c) != skip) {
                sub(r, c2++) = full(r, c);
            }
        }
    }
    return permanent(sub, PermanentMethod::Ryser, limits);
}

std::vector<int> plus_unit(std::vector<int> z, int j) {
    ++z[static_cast<std::size_t>(j)];
    return z;
}

}  // namespace

Matching find_perfect_matching(const BipartiteGraph &bg) {
    const std::vector<char> none(static_cast<std::size_t>(bg.graph().vertex_count()), 0);
    Augmenter aug(bg, none);
    require(aug.run() == bg.part_size(), ErrorKind::NoPerfectMatching, "graph has no perfect matching");
    return aug.matching();
}

bool has_near_perfect_support(const BipartiteGraph &bg, int left_vertex, int right_vertex) {
    std::vector<char> blocked(static_cast<std::size_t>(bg.graph().vertex_count()), 0);
    blocked[static_cast<std::size_t>(left_vertex)] = 1;
    blocked[static_cast<std::size_t>(right_vertex)] = 1;
    Augmenter aug(bg, blocked);
    return aug.run() == bg.part_size() - 1;
}

HoleWeights compute_hole_weights_exact(const BipartiteGraph &bg, const OracleLimits &limits) {
    const int p = bg.part_size();
    require(p <= limits.hole_weight_max_part, ErrorKind::SizeLimit,
            "part size " + std::to_string(p) + " exceeds the exact hole-weight cap " +
                std::to_string(limits.hole_weight_max_part));
    const Matrix<double> b = bg.biadjacency();
    const double total = permanent(b, PermanentMethod::Ryser, limits);
    require(total > 0, ErrorKind::NoPerfectMatching, "graph has no perfect matching");
    HoleWeights hw(bg, HoleWeightMode::OracleExact);
    const auto n = static_cast<std::size_t>(p);
    Matrix<double> minor(n - 1, n - 1);
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            for (std::size_t r = 0, r2 = 0; r < n; ++r) {
                if (r == x) {
                    continue;
                }
                for (std::size_t c = 0, c2 = 0; c < n; ++c) {
                    if (c != y) {
                        minor(r2, c2++) = b(r, c);
                    }
                }
                ++r2;
            }
            const double sub = permanent(minor, PermanentMethod::Ryser, limits);
            if (sub > 0) {
                hw.set_position(static_cast<int>(x), static_cast<int>(y), total / sub);
            }
        }
    }
    return hw;
}

HoleWeights gadget_hole_weights_exact(const BipartiteGadget &gadget, const BipartiteGraph &bg,
                                      const OracleLimits &limits) {
    const int m = gadget.rows;
    const int n = gadget.cols;
    const int k = gadget.k;
    const Matrix<double> &a = gadget.matrix;
    require(occupancy_count(m, n) <= limits.occupancy_max, ErrorKind::SizeLimit,
            "occupancy space too large for gadget hole weights");

    const auto top = occupancy_vectors(m, n, limits.occupancy_max);
    const auto below = n >= 1 ? occupancy_vectors(m, n - 1, limits.occupancy_max) : std::vector<OccupancyVector>{};

    // `drop[a]` lowers the binomial top for row a (one entry per excluded
    // copy of that row).
    const auto mult = [&](const std::vector<int> &z, std::initializer_list<int> drop) {
        double f = 1;
        for (int j = 0; j < m; ++j) {
            int kj = k;
            for (int d : drop) {
                kj -= d == j ? 1 : 0;
            }
            f *= binomial(kj, z[static_cast<std::size_t>(j)]);
        }
        return f;
    };

    std::vector<double> full_top;
    double total = 0;
    for (const auto &z : top) {
        const double p = row_repeated_perm(a, z.z, -1, limits);
        full_top.push_back(p);
        total += mult(z.z, {}) * p * p;
    }
    require(total > 0, ErrorKind::NoPerfectMatching, "gadget has no perfect matching");

    // Permanents over Phi_{m,n-1}: minus column i, and with one extra copy of
    // row j over all columns.
    const auto nb = below.size();
    Matrix<double> minus_col(nb, static_cast<std::size_t>(n));
    Matrix<double> plus_row(nb, static_cast<std::size_t>(m));
    for (std::size_t s = 0; s < nb; ++s) {
        for (int i = 0; i < n; ++i) {
            minus_col(s, static_cast<std::size_t>(i)) = row_repeated_perm(a, below[s].z, i, limits);
        }
        for (int j = 0; j < m; ++j) {
            plus_row(s, static_cast<std::size_t>(j)) = row_repeated_perm(a, plus_unit(below[s].z, j), -1, limits);
        }
    }

    const auto vv = [&](int i, int i2) {
        double w = 0;
        for (std::size_t s = 0; s < nb; ++s) {
            w += mult(below[s].z, {}) * minus_col(s, static_cast<std::size_t>(i)) *
                 minus_col(s, static_cast<std::size_t>(i2));
        }
        return w;
    };
    const auto vu = [&](int i, int jq) {
        double w = 0;
        for (std::size_t s = 0; s < nb; ++s) {
            w += mult(below[s].z, {jq}) * minus_col(s, static_cast<std::size_t>(i)) *
                 plus_row(s, static_cast<std::size_t>(jq));
        }
        return w;
    };
    const auto uu_same = [&](int jp) {
        double w = 0;
        for (std::size_t s = 0; s < top.size(); ++s) {
            w += mult(top[s].z, {jp}) * full_top[s] * full_top[s];
        }
        return w;
    };
    const auto uu = [&](int jp, int jq) {
        double w = 0;
        for (std::size_t s = 0; s < nb; ++s) {
            w += mult(below[s].z, {jp, jq}) * plus_row(s, static_cast<std::size_t>(jp)) *
                 plus_row(s, static_cast<std::size_t>(jq));
        }
        return w;
    };

    // Class weights depend only on vertex kinds and row indices; cache them.
    const auto mn = static_cast<std::size_t>(std::max(m, n));
    Matrix<double> c_vv(static_cast<std::size_t>(n), static_cast<std::size_t>(n), -1.0);
    Matrix<double> c_vu(static_cast<std::size_t>(n), static_cast<std::size_t>(m), -1.0);
    Matrix<double> c_uu(static_cast<std::size_t>(m), static_cast<std::size_t>(m), -1.0);
    std::vector<double> c_same(mn, -1.0);
    const auto cached = [](double &slot, auto &&compute) {
        if (slot < 0) {
            slot = compute();
        }
        return slot;
    };

    HoleWeights hw(bg, HoleWeightMode::OracleExact);
    for (int x : bg.left()) {
        const GadgetLabel &lx = gadget.labels[static_cast<std::size_t>(x)];
        for (int y : bg.right()) {
            const GadgetLabel &ly = gadget.labels[static_cast<std::size_t>(y)];
            double w = 0;
            if (!lx.is_row_copy && !ly.is_row_copy) {  // v^1_i, v^2_i'
                w = cached(c_vv(static_cast<std::size_t>(lx.index), static_cast<std::size_t>(ly.index)),
                           [&] { return vv(lx.index, ly.index); });
            } else if (!lx.is_row_copy) {  // v^1_i, u^1_q
                w = cached(c_vu(static_cast<std::size_t>(lx.index), static_cast<std::size_t>(ly.index)),
                           [&] { return vu(lx.index, ly.index); });
            } else if (!ly.is_row_copy) {  // u^2_p, v^2_i': mirror image of the case above
                w = cached(c_vu(static_cast<std::size_t>(ly.index), static_cast<std::size_t>(lx.index)),
                           [&] { return vu(ly.index, lx.index); });
            } else if (lx.index == ly.index && lx.copy == ly.copy) {
                w = cached(c_same[static_cast<std::size_t>(lx.index)], [&] { return uu_same(lx.index); });
            } else {
                w = cached(c_uu(static_cast<std::size_t>(lx.index), static_cast<std::size_t>(ly.index)),
                           [&] { return uu(lx.index, ly.index); });
            }
            if (w > 0) {
                hw.set_position(bg.position(x), bg.position(y), total / w);
            }
        }
    }
    return hw;
}

PmState perfect_state(Matching pm) {
    require(pm.is_perfect(), ErrorKind::NotPerfect, "chain start must be a perfect matching");
    return {std::move(pm), -1, -1};
}

double pm_state_weight(const BipartiteGraph &bg, const HoleWeights &hw, const PmState &s) {
    const double w = s.matching.weight(bg.graph());
    return s.is_perfect() ? w : w * hw.at(bg, s.hole_left, s.hole_right);
}

PmMove propose_pm_move(const BipartiteGraph &bg, const HoleWeights &hw, const PmState &s, int edge_id) {
    const Graph &g = bg.graph();
    const double lambda = g.edge(edge_id).weight;
    const int l = bg.left_end(edge_id);
    const int r = bg.right_end(edge_id);
    const double proposal = static_cast<double>(bg.part_size()) / g.edge_count();
    PmMove move;
    if (s.is_perfect()) {
        if (s.matching.mate_edge(l) != edge_id) {
            return move;
        }
        move.kind = MoveKind::Remove;
        move.remove_edge = edge_id;
        move.new_hole_left = l;
        move.new_hole_right = r;
        move.ratio = hw.at(bg, l, r) / lambda * proposal;
        return move;
    }
    const double here = hw.at(bg, s.hole_left, s.hole_right);
    if (l == s.hole_left && r == s.hole_right) {
        move.kind = MoveKind::Add;
        move.add_edge = edge_id;
        move.ratio = lambda / here / proposal;
        return move;
    }
    if (l == s.hole_left) {
        const int held = s.matching.mate_edge(r);
        move.kind = MoveKind::Slide;
        move.add_edge = edge_id;
        move.remove_edge = held;
        move.new_hole_left = s.matching.mate(r);
        move.new_hole_right = s.hole_right;
        move.ratio = lambda / g.edge(held).weight * hw.at(bg, move.new_hole_left, move.new_hole_right) / here;
        return move;
    }
    if (r == s.hole_right) {
        const int held = s.matching.mate_edge(l);
        move.kind = MoveKind::Slide;
        move.add_edge = edge_id;
        move.remove_edge = held;
        move.new_hole_left = s.hole_left;
        move.new_hole_right = s.matching.mate(l);
        move.ratio = lambda / g.edge(held).weight * hw.at(bg, move.new_hole_left, move.new_hole_right) / here;
        return move;
    }
    return move;
}

void apply_pm_move(const BipartiteGraph &bg, PmState &s, const PmMove &move) {
    if (move.remove_edge >= 0) {
        s.matching.remove(bg.graph(), move.remove_edge);
    }
    if (move.add_edge >= 0) {
        s.matching.add(bg.graph(), move.add_edge);
    }
    s.hole_left = move.new_hole_left;
    s.hole_right = move.new_hole_right;
}

bool pm_chain_step(PmState &s, const BipartiteGraph &bg, const HoleWeights &hw, Rng &rng) {
    if (rng.coin() || bg.part_size() == 0) {
        return false;
    }
    int edge_id = 0;
    if (s.is_perfect()) {
        const int l = bg.left()[rng.below(static_cast<std::uint64_t>(bg.part_size()))];
        edge_id = s.matching.mate_edge(l);
    } else {
        edge_id = static_cast<int>(rng.below(static_cast<std::uint64_t>(bg.graph().edge_count())));
    }
    const PmMove move = propose_pm_move(bg, hw, s, edge_id);
    if (move.kind == MoveKind::Hold || !(move.ratio > 0)) {
        return false;
    }
    if (move.ratio < 1.0 && !(rng.uniform() < move.ratio)) {
        return false;
    }
    apply_pm_move(bg, s, move);
    assert(s.matching.is_valid_in(bg.graph()));
    assert(s.is_perfect() ? s.matching.is_perfect() : s.matching.is_near_perfect());
    return true;
}

namespace {

// Number of Bernoulli(p) trials up to and including the first success.
std::uint64_t geometric_trials(double p, Rng &rng) {
    if (p >= 1) {
        return 1;
    }
    const double u = 1.0 - rng.uniform();  // (0, 1]
    const double g = std::floor(std::log(u) / std::log1p(-p));
    return g >= 1.8e19 ? std::numeric_limits<std::uint64_t>::max() : 1 + static_cast<std::uint64_t>(g);
}

}  // namespace

void run_pm_chain(PmState &s, const BipartiteGraph &bg, const HoleWeights &hw, std::uint64_t steps, Rng &rng) {
    const Graph &g = bg.graph();
    const auto edges = static_cast<double>(g.edge_count());
    const auto part = static_cast<double>(bg.part_size());
    std::vector<double> accept(static_cast<std::size_t>(bg.part_size()));
    std::uint64_t t = 0;
    while (t < steps) {
        if (s.is_perfect()) {
            // Rejection-free: per step, removal of the edge at Left vertex l
            // happens with probability min(1, ratio_l) / (2 * part).
            double total = 0;
            for (std::size_t i = 0; i < accept.size(); ++i) {
                const PmMove move = propose_pm_move(bg, hw, s, s.matching.mate_edge(bg.left()[i]));
                total += accept[i] = std::min(1.0, move.ratio);
            }
            const std::uint64_t wait = geometric_trials(total / (2 * part), rng);
            if (wait > steps - t) {
                return;
            }
            t += wait;
            double pick = rng.uniform() * total;
            std::size_t i = 0;
            while (i + 1 < accept.size() && pick >= accept[i]) {
                pick -= accept[i++];
            }
            apply_pm_move(bg, s, propose_pm_move(bg, hw, s, s.matching.mate_edge(bg.left()[i])));
            continue;
        }
        // Only edges at a hole can move a near-perfect state. Drawing from the
        // two incidence lists counts the edge between the holes twice; its
        // second copy stands for a held step.
        const auto nx = g.neighbors(s.hole_left);
        const auto ny = g.neighbors(s.hole_right);
        const auto active = nx.size() + ny.size();
        const std::uint64_t wait = geometric_trials(0.5 * static_cast<double>(active) / edges, rng);
        if (wait > steps - t) {
            return;
        }
        t += wait;
        const std::size_t i = rng.below(active);
        int edge_id = -1;
        if (i < nx.size()) {
            edge_id = nx[i].edge;
        } else if (ny[i - nx.size()].vertex != s.hole_left) {
            edge_id = ny[i - nx.size()].edge;
        } else {
            continue;
        }
        const PmMove move = propose_pm_move(bg, hw, s, edge_id);
        if (move.kind == MoveKind::Hold || !(move.ratio > 0)) {
            continue;
        }
        if (move.ratio < 1.0 && !(rng.uniform() < move.ratio)) {
            continue;
        }
        apply_pm_move(bg, s, move);
    }
}

PerfectMatchingSampler::PerfectMatchingSampler(BipartiteGraph bg, HoleWeights hw, double epsilon,
                                               PmSamplerConfig config)
    : bg_(std::move(bg)), start_(find_perfect_matching(bg_)) {
    config.chain.validate();
    require(epsilon > 0 && epsilon < 1, ErrorKind::Validation, "epsilon must lie in (0,1)");
    require(hw.part_size() == bg_.part_size(), ErrorKind::Dimension, "hole weights do not match the graph");
    const std::size_t support = hw.support_size();
    double scale = config.hole_scale;
    if (scale == 0) {
        scale = support > 0 ? 1.0 / static_cast<double>(support) : 1.0;
    }
    hw_ = hw.scaled(scale);
    steps_ = required_steps(bg_.graph(), epsilon, config.chain);
    retry_budget_ = config.retry_budget > 0 ? config.retry_budget
                                            : 64 * static_cast<int>(std::ceil(std::log(1.0 / epsilon)));
    retry_budget_ = std::max(retry_budget_, 1);
    persistent_ = config.persistent;
    require(config.burn_in_factor >= 0, ErrorKind::Validation, "burn-in factor must be >= 0");
    burn_in_ = persistent_ ? steps_ * static_cast<std::uint64_t>(config.burn_in_factor) : 0;
    state_ = perfect_state(start_);
}

Matching PerfectMatchingSampler::sample(Rng &rng) {
    for (int attempt = 0; attempt < retry_budget_; ++attempt) {
        if (!persistent_) {
            state_ = perfect_state(start_);
        }
        run_pm_chain(state_, bg_, hw_, steps_ + burn_in_, rng);
        burn_in_ = 0;
        ++attempts_;
        if (state_.is_perfect()) {
            ++successes_;
            return state_.matching;
        }
    }
    fail(ErrorKind::RetryBudgetExceeded,
         "no perfect matching after " + std::to_string(retry_budget_) + " attempts of " + std::to_string(steps_) +
             " steps");
}

Matching sample_perfect_matching(const BipartiteGraph &bg, double epsilon, const PmSamplerConfig &config) {
    PerfectMatchingSampler sampler(bg, compute_hole_weights_exact(bg), epsilon, config);
    Rng rng(config.chain.seed);
    return sampler.sample(rng);
}

namespace {

// Graph over the same vertices as `bg` with every Left-Right pair present.
// Pair activities interpolate from 1 toward lambda_e (real edges) and
// toward `floor` (non-edges) as beta goes from 0 to 1.
BipartiteGraph stage_graph(const BipartiteGraph &bg, double beta, double floor) {
    Graph g(bg.graph().vertex_count());
    for (int l : bg.left()) {
        for (int r : bg.right()) {
            const double lambda = bg.graph().weight(l, r);
            g.add_edge(l, r, std::pow(lambda > 0 ? lambda : floor, beta));
        }
    }
    std::vector<Side> side(static_cast<std::size_t>(g.vertex_count()));
    for (int v = 0; v < g.vertex_count(); ++v) {
        side[static_cast<std::size_t>(v)] = bg.side(v);
    }
    return BipartiteGraph(std::move(g), std::move(side));
}

Matching transplant(const BipartiteGraph &from, const Matching &pm, const BipartiteGraph &to) {
    Matching out(to.graph().vertex_count());
    for (int l : from.left()) {
        const auto id = to.graph().find_edge(l, pm.mate(l));
        out.add(to.graph(), *id);
    }
    return out;
}

// One estimation round: runs the chain and multiplies each visited weight by
// (perfect visits + 1) / (hole visits + 1).
void refine(const BipartiteGraph &bg, HoleWeights &hw, const Matching &start, std::uint64_t steps, Rng &rng,
            double bound) {
    const auto p = static_cast<std::size_t>(bg.part_size());
    std::vector<double> visits(p * p, 0.0);
    double perfect = 0;
    PmState s = perfect_state(start);
    const std::uint64_t burn_in = steps / 4;
    for (std::uint64_t t = 0; t < steps; ++t) {
        pm_chain_step(s, bg, hw, rng);
        if (t < burn_in) {
            continue;
        }
        if (s.is_perfect()) {
            perfect += 1;
        } else {
            visits[static_cast<std::size_t>(bg.position(s.hole_left)) * p +
                   static_cast<std::size_t>(bg.position(s.hole_right))] += 1;
        }
    }
    for (std::size_t x = 0; x < p; ++x) {
        for (std::size_t y = 0; y < p; ++y) {
            const double w = hw.at_position(static_cast<int>(x), static_cast<int>(y));
            if (w <= 0) {
                continue;
            }
            const double next = w * (perfect + 1) / (visits[x * p + y] + 1);
            require(next >= 1 / bound && next <= bound, ErrorKind::AnnealDiverged,
                    "hole weight estimate " + std::to_string(next) + " left [1/" + std::to_string(bound) + ", " +
                        std::to_string(bound) + "]");
            hw.set_position(static_cast<int>(x), static_cast<int>(y), next);
        }
    }
}

}  // namespace

HoleWeights anneal_hole_weights(const BipartiteGraph &bg, const AnnealConfig &config) {
    config.chain.validate();
    require(config.stages >= 1, ErrorKind::Validation, "anneal stages must be positive");
    require(config.steps_per_stage >= 1, ErrorKind::Validation, "anneal steps per stage must be positive");
    require(config.final_non_edge_activity > 0 && config.final_non_edge_activity <= 1, ErrorKind::Validation,
            "final non-edge activity must lie in (0,1]");
    require(config.divergence_bound > 1, ErrorKind::Validation, "divergence bound must exceed 1");
    const Matching start = find_perfect_matching(bg);
    Rng rng(config.chain.seed);
    const int p = bg.part_size();

    HoleWeights hw(bg, HoleWeightMode::Annealed);
    for (int x = 0; x < p; ++x) {
        for (int y = 0; y < p; ++y) {
            hw.set_position(x, y, p);
        }
    }
    for (int stage = 1; stage <= config.stages; ++stage) {
        const double beta = static_cast<double>(stage) / config.stages;
        const BipartiteGraph sg = stage_graph(bg, beta, config.final_non_edge_activity);
        refine(sg, hw, transplant(bg, start, sg), config.steps_per_stage, rng, config.divergence_bound);
    }
    for (int x : bg.left()) {
        for (int y : bg.right()) {
            if (!has_near_perfect_support(bg, x, y)) {
                hw.set_position(bg.position(x), bg.position(y), 0.0);
            }
        }
    }
    refine(bg, hw, start, config.steps_per_stage, rng, config.divergence_bound);
    return hw;
}

}  // namespace gbs
