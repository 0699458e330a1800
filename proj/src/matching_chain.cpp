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

#include "gbs/matching_chain.hpp"

#include <cassert>
#include <cmath>
#include <limits>

namespace gbs {

void ChainConfig::validate() const {
    require(epsilon > 0 && epsilon < 1, ErrorKind::Validation, "epsilon must lie in (0,1)");
    require(std::isfinite(step_constant) && step_constant > 0, ErrorKind::Validation,
            "step constant must be positive");
    require(!max_steps_override || *max_steps_override > 0, ErrorKind::Validation, "max steps must be positive");
}

Move propose_move(const Graph &g, const Matching &m, int edge_id) {
    const Edge &e = g.edge(edge_id);
    const int eu = m.mate_edge(e.u);
    if (eu == edge_id) {
        return {MoveKind::Remove, -1, edge_id, 1.0 / e.weight};
    }
    const int ev = m.mate_edge(e.v);
    if (eu < 0 && ev < 0) {
        return {MoveKind::Add, edge_id, -1, e.weight};
    }
    if (eu < 0 || ev < 0) {
        const int other = eu < 0 ? ev : eu;
        return {MoveKind::Slide, edge_id, other, e.weight / g.edge(other).weight};
    }
    return {};
}

void apply_move(const Graph &g, Matching &m, const Move &move) {
    if (move.remove_edge >= 0) {
        m.remove(g, move.remove_edge);
    }
    if (move.add_edge >= 0) {
        m.add(g, move.add_edge);
    }
}

StepOutcome chain_step(Matching &m, const Graph &g, Rng &rng) {
    if (rng.coin() || g.edge_count() == 0) {
        return {};
    }
    const auto edge_id = static_cast<int>(rng.below(static_cast<std::uint64_t>(g.edge_count())));
    const Move move = propose_move(g, m, edge_id);
    if (move.kind == MoveKind::Hold) {
        return {};
    }
    const bool accept = move.ratio >= 1.0 || rng.uniform() < move.ratio;
    if (accept) {
        apply_move(g, m, move);
    }
    assert(m.is_valid_in(g));
    return {move.kind, accept};
}

std::uint64_t required_steps(const Graph &g, double epsilon, const ChainConfig &config) {
    config.validate();
    require(epsilon > 0 && epsilon < 1, ErrorKind::Validation, "epsilon must lie in (0,1)");
    if (config.max_steps_override) {
        return *config.max_steps_override;
    }
    const double n = g.vertex_count();
    const double lambda_bar = g.max_weight_or_one();
    const double steps =
        config.step_constant * lambda_bar * g.edge_count() * n * n * std::log(std::max(n, 1.0) * lambda_bar / epsilon);
    if (!(steps < 1.8e19)) {
        return std::numeric_limits<std::uint64_t>::max();
    }
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(steps)));
}

void run_chain(const Graph &g, Matching &state, std::uint64_t steps, Rng &rng) {
    for (std::uint64_t t = 0; t < steps; ++t) {
        chain_step(state, g, rng);
    }
}

Matching sample_matching(const Graph &g, const ChainConfig &config, Rng &rng, std::ostream *diagnostics) {
    require(g.vertex_count() >= 1, ErrorKind::Validation, "graph must have at least one vertex");
    const std::uint64_t steps = required_steps(g, config.epsilon, config);
    Matching m(g.vertex_count());
    if (diagnostics == nullptr) {
        run_chain(g, m, steps, rng);
        return m;
    }
    *diagnostics << "step,size,accepted\n";
    for (std::uint64_t t = 0; t < steps; ++t) {
        const StepOutcome out = chain_step(m, g, rng);
        *diagnostics << t << ',' << m.size() << ',' << (out.accepted ? 1 : 0) << '\n';
    }
    return m;
}

Matching sample_matching(const Graph &g, const ChainConfig &config) {
    Rng rng(config.seed);
    return sample_matching(g, config, rng);
}

}  // namespace gbs
