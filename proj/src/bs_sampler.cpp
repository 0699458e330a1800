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
#include "gbs/bs_sampler.hpp"

#include <cmath>

#include "gbs/exact.hpp"

namespace gbs {

int choose_k(int n, double epsilon, std::optional<int> k_override) {
    if (k_override) {
        require(*k_override >= 1, ErrorKind::Validation, "k must be positive");
        return *k_override;
    }
    require(n >= 1, ErrorKind::Validation, "n must be positive");
    require(epsilon > 0 && epsilon < 1, ErrorKind::Validation, "epsilon must lie in (0,1)");
    const double k = std::ceil(4.0 * n * n / epsilon);
    require(k < 1e9, ErrorKind::SizeLimit, "k = ceil(4n^2/epsilon) is too large");
    return static_cast<int>(k);
}

void BsRequest::validate() const {
    require(matrix.rows() >= 1 && matrix.cols() >= 1, ErrorKind::Dimension, "matrix must be non-empty");
    require(epsilon > 0 && epsilon < 1, ErrorKind::Validation, "epsilon must lie in (0,1)");
    for (std::size_t c = 0; c < matrix.cols(); ++c) {
        bool nonzero = false;
        for (std::size_t r = 0; r < matrix.rows(); ++r) {
            const double x = matrix(r, c);
            require(std::isfinite(x) && x >= 0, ErrorKind::Validation, "matrix entries must be finite and >= 0");
            nonzero = nonzero || x > 0;
        }
        require(nonzero, ErrorKind::Validation, "column " + std::to_string(c) + " is all zero");
    }
    pm.chain.validate();
}

HoleWeights gadget_oracle_weights(const BipartiteGadget &gadget, const BipartiteGraph &bg,
                                  const OracleLimits &limits) {
    if (bg.part_size() <= limits.hole_weight_max_part) {
        return compute_hole_weights_exact(bg, limits);
    }
    return gadget_hole_weights_exact(gadget, bg, limits);
}

BsSampler::BsSampler(const BsRequest &req) {
    req.validate();
    const int n = static_cast<int>(req.matrix.cols());
    gadget_ = bs_gadget(req.matrix, choose_k(n, req.epsilon, req.k_override));
    BipartiteGraph bg = BipartiteGraph::from_gadget(gadget_);
    HoleWeights hw;
    if (req.weight_mode == PmWeightMode::Oracle) {
        hw = gadget_oracle_weights(gadget_, bg);
    } else {
        AnnealConfig anneal;
        anneal.chain = req.pm.chain;
        anneal.stages = req.anneal_stages;
        anneal.steps_per_stage = req.anneal_steps_per_stage;
        hw = anneal_hole_weights(bg, anneal);
    }
    sampler_.emplace(std::move(bg), std::move(hw), req.epsilon / 2, req.pm);
}

OccupancyVector BsSampler::sample(Rng &rng) {
    return extract_occupancy(gadget_, sampler_->sample(rng));
}

OccupancyVector sample_bs(const BsRequest &req) {
    BsSampler sampler(req);
    Rng rng(req.pm.chain.seed);
    return sampler.sample(rng);
}

std::vector<BiasRow> gadget_bias_report(const Matrix<double> &a, int k, const OracleLimits &limits) {
    require(a.rows() >= 1, ErrorKind::Dimension, "matrix must be non-empty");
    std::vector<BiasRow> rows;
    for (auto &z : occupancy_vectors(static_cast<int>(a.rows()), static_cast<int>(a.cols()), limits.occupancy_max)) {
        const double f = gadget_bias_factor(z, k);
        rows.push_back({std::move(z), f});
    }
    return rows;
}

}  // namespace gbs
