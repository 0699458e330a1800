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

// Metropolis chain on all matchings of a weighted graph with stationary
// distribution mu(M) proportional to prod_{e in M} lambda_e.
//
// One step: with probability 1/2 hold. Otherwise draw an edge e = (u,v)
// uniformly from E and
//   e in M                      -> propose M - e
//   u, v both unmatched         -> propose M + e
//   exactly one of u, v matched -> propose M - e'' + e (e'' the matched edge)
//   otherwise                   -> hold
// and accept with probability min(1, w(M') / w(M)). Proposals are symmetric,
// so this is reversible with respect to w.

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>

#include "gbs/graph.hpp"
#include "gbs/rng.hpp"

namespace gbs {

struct ChainConfig {
    std::uint64_t seed = 0;
    double epsilon = 0.1;
    double step_constant = 1.0;
    std::optional<std::uint64_t> max_steps_override;

    /// Throws ValidationError unless epsilon in (0,1), step_constant > 0 and
    /// any override is positive.
    void validate() const;
};

enum class MoveKind { Hold, Add, Remove, Slide };

/// A proposed transition: remove `remove_edge` (if >= 0), then add
/// `add_edge` (if >= 0). `ratio` is w(M') / w(M) before the min with 1.
struct Move {
    MoveKind kind = MoveKind::Hold;
    int add_edge = -1;
    int remove_edge = -1;
    double ratio = 1.0;
};

/// The deterministic part of a step once edge `edge_id` has been drawn.
Move propose_move(const Graph &g, const Matching &m, int edge_id);

void apply_move(const Graph &g, Matching &m, const Move &move);

struct StepOutcome {
    MoveKind kind = MoveKind::Hold;
    bool accepted = false;
};

/// One lazy Metropolis step, in place.
StepOutcome chain_step(Matching &m, const Graph &g, Rng &rng);

/// ceil(C * lambda_bar * |E| * n^2 * ln(n * lambda_bar / epsilon)), at least 1,
/// with lambda_bar = max_e {1, lambda_e}; `config.max_steps_override` wins
/// when set.
std::uint64_t required_steps(const Graph &g, double epsilon, const ChainConfig &config);

/// Runs required_steps(g, config.epsilon, config) steps from the empty
/// matching. If `diagnostics` is given, writes "step,size,accepted" CSV rows.
Matching sample_matching(const Graph &g, const ChainConfig &config, Rng &rng, std::ostream *diagnostics = nullptr);

/// Convenience overload seeding a fresh stream from `config.seed`.
Matching sample_matching(const Graph &g, const ChainConfig &config);

/// Runs exactly `steps` steps from `start` (no diagnostics); the hot loop
/// shared by the samplers.
void run_chain(const Graph &g, Matching &state, std::uint64_t steps, Rng &rng);

}  // namespace gbs
