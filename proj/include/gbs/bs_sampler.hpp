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
// Boson sampling for a non-negative m x n matrix: build the k-copy gadget
// with k = ceil(4n^2/epsilon), draw a perfect matching with error epsilon/2,
// and read off the layer-1 row occupancy.

#pragma once

#include <optional>
#include <vector>

#include "gbs/constructions.hpp"
#include "gbs/pm_chain.hpp"

namespace gbs {

/// ceil(4n^2 / epsilon), or `k_override` when given.
int choose_k(int n, double epsilon, std::optional<int> k_override = std::nullopt);

enum class PmWeightMode { Oracle, Anneal };

struct BsRequest {
    Matrix<double> matrix;
    double epsilon = 0.1;
    PmSamplerConfig pm;
    std::optional<int> k_override;
    PmWeightMode weight_mode = PmWeightMode::Oracle;
    int anneal_stages = 8;
    std::uint64_t anneal_steps_per_stage = 200000;

    /// Non-empty, finite, non-negative, no all-zero column, epsilon in (0,1).
    void validate() const;
};

class BsSampler {
   public:
    explicit BsSampler(const BsRequest &req);

    OccupancyVector sample(Rng &rng);

    const BipartiteGadget &gadget() const noexcept {
        return gadget_;
    }
    const PerfectMatchingSampler &chain() const noexcept {
        return *sampler_;
    }

   private:
    BipartiteGadget gadget_;
    std::optional<PerfectMatchingSampler> sampler_;
};

/// Hole weights for a gadget: the generic permanent-minor oracle up to part
/// size `limits.hole_weight_max_part`, the row-copy closed form beyond it.
HoleWeights gadget_oracle_weights(const BipartiteGadget &gadget, const BipartiteGraph &bg,
                                  const OracleLimits &limits = default_limits());

/// One sample from a stream seeded with `req.pm.chain.seed`.
OccupancyVector sample_bs(const BsRequest &req);

struct BiasRow {
    OccupancyVector z;
    double factor;
};

/// gadget_bias_factor for every z in Phi_{m,n}.
std::vector<BiasRow> gadget_bias_report(const Matrix<double> &a, int k,
                                        const OracleLimits &limits = default_limits());

}  // namespace gbs
