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
// Graph Gaussian boson sampling through G x K2: boost every product edge
// weight by 4n^2 so perfect matchings carry at least half of the matching
// mass, run the matching chain, reject draws that are not perfect, and
// project the survivor onto the endpoints of its original-copy edges.

#pragma once

#include <cstdint>

#include "gbs/constructions.hpp"
#include "gbs/matching_chain.hpp"

namespace gbs {

/// Every edge weight of `pg` times 4n^2, n = base vertex count.
ProductGraph boost_weights(const ProductGraph &pg);

struct GbsRequest {
    Graph graph;
    double c = 1.0;
    double epsilon = 0.1;
    ChainConfig chain;

    /// Throws ValidationError unless c > 0, epsilon in (0,1) and the graph has
    /// a vertex.
    void validate() const;
};

/// Chain error handed to the matching sampler: min(1/4, epsilon/2).
double chain_epsilon(double epsilon);

/// Consecutive non-perfect draws tolerated: 64 * ceil(log2(1/epsilon)).
int rejection_budget(double epsilon);

class GbsSampler {
   public:
    explicit GbsSampler(const GbsRequest &req);

    /// Throws RejectionBudgetExceeded.
    VertexSubset sample(Rng &rng);

    /// One chain draw (no rejection); true if it was perfect.
    bool probe(Rng &rng);

    const ProductGraph &product() const noexcept {
        return product_;
    }
    std::uint64_t steps_per_draw() const noexcept {
        return steps_;
    }
    std::uint64_t draws() const noexcept {
        return draws_;
    }
    std::uint64_t perfect_draws() const noexcept {
        return perfect_;
    }

   private:
    Matching draw(Rng &rng);

    ProductGraph product_;
    std::uint64_t steps_ = 0;
    int budget_ = 0;
    std::uint64_t draws_ = 0;
    std::uint64_t perfect_ = 0;
};

/// One sample from a stream seeded with `req.chain.seed`.
VertexSubset sample_gbs(const GbsRequest &req);

/// Fraction of `trials` chain draws that are perfect.
double acceptance_rate_probe(const GbsRequest &req, int trials);

}  // namespace gbs
