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

// Weighted perfect-matching sampler for bipartite graphs.
//
// The chain lives on perfect and near-perfect matchings. A near-perfect
// matching with holes (x in Left, y in Right) carries weight
// Lambda(M) = w(M) * hw(x, y), a perfect one Lambda(M) = w(M). With the
// ideal hole weights hw*(x,y) = Perm(B) / Perm(B - x - y) every hole class
// has the same total mass as the perfect class, which is what makes the
// chain move; conditioned on being perfect, the stationary law is
// w(M) / Perm(B) whatever the hole weights are.
//
// One step: with probability 1/2 hold. Otherwise
//   M perfect: draw e = (l, r) uniformly from M and propose M - e, holes
//     (l, r);
//   M with holes (x, y): draw e = (l, r) (l on the Left) uniformly from E and
//     e = (x, y)                    -> propose M + e
//     l = x, r matched to x'        -> propose M - (x',r) + e, holes (x', y)
//     r = y, l matched to y'        -> propose M - (l,y') + e, holes (x, y')
//     otherwise                     -> hold.
// A move is accepted with probability min(1, Lambda(M') q(M'->M) /
// (Lambda(M) q(M->M'))); the proposal ratio is |M| / |E| for a removal and
// its inverse for an addition, 1 for a slide.

#pragma once

#include <cstdint>
#include <vector>

#include "gbs/constructions.hpp"
#include "gbs/exact_arith.hpp"
#include "gbs/graph.hpp"
#include "gbs/matching_chain.hpp"
#include "gbs/rng.hpp"

namespace gbs {

/// A graph together with a balanced two-sided vertex partition that every
/// edge crosses. `position(v)` is v's index within its side.
class BipartiteGraph {
   public:
    /// Validates the partition; throws NotBipartite or ValidationError
    /// (unbalanced sides).
    BipartiteGraph(Graph graph, std::vector<Side> side);

    /// Partition found by BFS two-colouring.
    static BipartiteGraph from_graph(Graph graph);
    static BipartiteGraph from_gadget(const BipartiteGadget &gadget);

    const Graph &graph() const noexcept {
        return graph_;
    }
    int part_size() const noexcept {
        return static_cast<int>(left_.size());
    }
    Side side(int v) const {
        return side_[static_cast<std::size_t>(v)];
    }
    int position(int v) const {
        return position_[static_cast<std::size_t>(v)];
    }
    const std::vector<int> &left() const noexcept {
        return left_;
    }
    const std::vector<int> &right() const noexcept {
        return right_;
    }

    /// Left endpoint of edge `id`.
    int left_end(int id) const {
        const Edge &e = graph_.edge(id);
        return side(e.u) == Side::Left ? e.u : e.v;
    }
    int right_end(int id) const {
        const Edge &e = graph_.edge(id);
        return side(e.u) == Side::Left ? e.v : e.u;
    }

    /// Weighted biadjacency matrix, rows = Left in `left()` order.
    Matrix<double> biadjacency() const;

   private:
    Graph graph_;
    std::vector<Side> side_;
    std::vector<int> left_;
    std::vector<int> right_;
    std::vector<int> position_;
};

enum class HoleWeightMode { OracleExact, Annealed };

/// Hole weight per (Left vertex, Right vertex) pair. 0 marks a pair that is
/// omitted (no near-perfect matching has exactly those holes).
class HoleWeights {
   public:
    HoleWeights() = default;
    HoleWeights(const BipartiteGraph &bg, HoleWeightMode mode);

    HoleWeightMode mode() const noexcept {
        return mode_;
    }
    int part_size() const noexcept {
        return part_;
    }

    /// Indexed by the side positions of the two holes.
    double at_position(int left_pos, int right_pos) const {
        return w_[static_cast<std::size_t>(left_pos) * static_cast<std::size_t>(part_) +
                  static_cast<std::size_t>(right_pos)];
    }
    void set_position(int left_pos, int right_pos, double w) {
        w_[static_cast<std::size_t>(left_pos) * static_cast<std::size_t>(part_) + static_cast<std::size_t>(right_pos)] =
            w;
    }

    double at(const BipartiteGraph &bg, int left_vertex, int right_vertex) const {
        return at_position(bg.position(left_vertex), bg.position(right_vertex));
    }
    bool has(const BipartiteGraph &bg, int left_vertex, int right_vertex) const {
        return at(bg, left_vertex, right_vertex) > 0;
    }

    /// Number of pairs carrying a weight.
    std::size_t support_size() const;

    /// Every weight multiplied by `factor`.
    HoleWeights scaled(double factor) const;

    /// Largest max(a/b, b/a) over the pairs both tables support; +inf if the
    /// supports differ.
    static double max_ratio(const HoleWeights &a, const HoleWeights &b);

   private:
    HoleWeightMode mode_ = HoleWeightMode::OracleExact;
    int part_ = 0;
    std::vector<double> w_;
};

/// Ideal hole weights from exact permanents of the weighted biadjacency
/// matrix: hw(x, y) = Perm(B) / Perm(B without row x and column y); pairs with
/// a zero minor are omitted. A 1x1 minor removal leaves the 0x0 matrix, whose
/// permanent is 1. Throws NoPerfectMatching if Perm(B) = 0 and SizeLimit past
/// `limits.hole_weight_max_part`.
HoleWeights compute_hole_weights_exact(const BipartiteGraph &bg, const OracleLimits &limits = default_limits());

/// The same ideal weights for a boson-sampling gadget, computed from the
/// row-copy symmetry: every near-perfect class reduces to a sum over
/// occupancy vectors of products of two permanents of row-repeated
/// submatrices. Polynomial in k, so it works far past the generic cap.
HoleWeights gadget_hole_weights_exact(const BipartiteGadget &gadget, const BipartiteGraph &bg,
                                      const OracleLimits &limits = default_limits());

/// True iff `bg` minus {left_vertex, right_vertex} has a perfect matching.
bool has_near_perfect_support(const BipartiteGraph &bg, int left_vertex, int right_vertex);

/// Some perfect matching of `bg` (augmenting paths); throws
/// NoPerfectMatching.
Matching find_perfect_matching(const BipartiteGraph &bg);

/// Chain state: a perfect or near-perfect matching plus its holes.
struct PmState {
    Matching matching;
    int hole_left = -1;  // -1 when perfect
    int hole_right = -1;

    bool is_perfect() const noexcept {
        return hole_left < 0;
    }
};

PmState perfect_state(Matching pm);

/// Lambda(M) = w(M) * hw(holes), or w(M) for a perfect matching.
double pm_state_weight(const BipartiteGraph &bg, const HoleWeights &hw, const PmState &s);

struct PmMove {
    MoveKind kind = MoveKind::Hold;
    int add_edge = -1;
    int remove_edge = -1;
    int new_hole_left = -1;
    int new_hole_right = -1;
    double ratio = 1.0;
};

/// Deterministic part of a step once edge `edge_id` has been drawn.
PmMove propose_pm_move(const BipartiteGraph &bg, const HoleWeights &hw, const PmState &s, int edge_id);
void apply_pm_move(const BipartiteGraph &bg, PmState &s, const PmMove &move);

/// One lazy step, in place; returns whether a move was made.
bool pm_chain_step(PmState &s, const BipartiteGraph &bg, const HoleWeights &hw, Rng &rng);

/// Advances the chain by `steps` steps with the same law as that many
/// pm_chain_step calls, but without simulating the steps that cannot move:
/// the waiting time until the next proposal that touches a hole (or, from a
/// perfect state, the next non-lazy step) is drawn as a geometric variable.
/// Consumes the random stream differently from pm_chain_step.
void run_pm_chain(PmState &s, const BipartiteGraph &bg, const HoleWeights &hw, std::uint64_t steps, Rng &rng);

struct PmSamplerConfig {
    ChainConfig chain;
    /// Multiplies every hole weight inside the sampler. 0 selects
    /// 1 / support_size, which puts half the stationary mass on perfect
    /// matchings when the weights are ideal.
    double hole_scale = 0.0;
    /// Restarts allowed per sample; 0 selects 64 * ceil(ln(1/epsilon)).
    int retry_budget = 0;
    /// Continue one chain across attempts instead of restarting every
    /// attempt from the fixed start matching.
    bool persistent = true;
    /// In persistent mode the first attempt runs this many times the
    /// per-attempt step count.
    int burn_in_factor = 16;
};

/// Draws perfect matchings approximately from mu(M) proportional to
/// prod lambda_e. An attempt runs required_steps(graph) chain steps and keeps
/// the final state if it is perfect.
class PerfectMatchingSampler {
   public:
    PerfectMatchingSampler(BipartiteGraph bg, HoleWeights hw, double epsilon, PmSamplerConfig config);

    /// Throws RetryBudgetExceeded when every attempt ends near-perfect.
    Matching sample(Rng &rng);

    const BipartiteGraph &graph() const noexcept {
        return bg_;
    }
    std::uint64_t steps_per_attempt() const noexcept {
        return steps_;
    }
    int retry_budget() const noexcept {
        return retry_budget_;
    }
    std::uint64_t attempts() const noexcept {
        return attempts_;
    }
    std::uint64_t successes() const noexcept {
        return successes_;
    }

   private:
    BipartiteGraph bg_;
    HoleWeights hw_;
    Matching start_;
    PmState state_;
    bool persistent_ = false;
    std::uint64_t burn_in_ = 0;
    std::uint64_t steps_ = 0;
    int retry_budget_ = 0;
    std::uint64_t attempts_ = 0;
    std::uint64_t successes_ = 0;
};

/// One-shot form: exact hole weights and a stream seeded from
/// `config.chain.seed`.
Matching sample_perfect_matching(const BipartiteGraph &bg, double epsilon, const PmSamplerConfig &config);

struct AnnealConfig {
    ChainConfig chain;
    int stages = 8;
    std::uint64_t steps_per_stage = 200000;
    /// Non-edges start at activity 1 and end at this value before removal.
    double final_non_edge_activity = 1e-4;
    /// Estimates outside [1/bound, bound] abort with AnnealDiverged.
    double divergence_bound = 1e12;
};

/// Estimates hole weights without permanents. Starts on the complete
/// bipartite graph over the same sides with unit activities (ideal weights
/// n), moves edge activities geometrically toward lambda and non-edge
/// activities toward `final_non_edge_activity` over `stages` stages, and after
/// each stage rescales hw(x,y) by the observed ratio of perfect to (x,y)-hole
/// occupation. A last stage runs on the real edges only. Pairs without
/// near-perfect support are omitted.
HoleWeights anneal_hole_weights(const BipartiteGraph &bg, const AnnealConfig &config);

}  // namespace gbs
