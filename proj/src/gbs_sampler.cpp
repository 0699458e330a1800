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
#include "gbs/gbs_sampler.hpp"

#include <cmath>

namespace gbs {

ProductGraph boost_weights(const ProductGraph &pg) {
    const double n = pg.base_vertex_count;
    ProductGraph out = pg;
    out.graph = pg.graph.scaled(4 * n * n);
    return out;
}

void GbsRequest::validate() const {
    require(std::isfinite(c) && c > 0, ErrorKind::Validation, "c must be a positive real");
    require(epsilon > 0 && epsilon < 1, ErrorKind::Validation, "epsilon must lie in (0,1)");
    require(graph.vertex_count() >= 1, ErrorKind::Validation, "graph must have at least one vertex");
    chain.validate();
}

double chain_epsilon(double epsilon) {
    return std::min(0.25, epsilon / 2);
}

int rejection_budget(double epsilon) {
    return 64 * static_cast<int>(std::ceil(std::log2(1.0 / epsilon)));
}

GbsSampler::GbsSampler(const GbsRequest &req) {
    req.validate();
    product_ = boost_weights(cartesian_product_k2(req.graph, req.c));
    steps_ = required_steps(product_.graph, chain_epsilon(req.epsilon), req.chain);
    budget_ = std::max(1, rejection_budget(req.epsilon));
}

Matching GbsSampler::draw(Rng &rng) {
    Matching m(product_.graph.vertex_count());
    run_chain(product_.graph, m, steps_, rng);
    ++draws_;
    if (m.is_perfect()) {
        ++perfect_;
    }
    return m;
}

bool GbsSampler::probe(Rng &rng) {
    return draw(rng).is_perfect();
}

VertexSubset GbsSampler::sample(Rng &rng) {
    for (int attempt = 0; attempt < budget_; ++attempt) {
        Matching m = draw(rng);
        if (m.is_perfect()) {
            return project_to_subset(product_, m);
        }
    }
    fail(ErrorKind::RejectionBudgetExceeded,
         std::to_string(budget_) + " consecutive chain draws were not perfect matchings");
}

VertexSubset sample_gbs(const GbsRequest &req) {
    GbsSampler sampler(req);
    Rng rng(req.chain.seed);
    return sampler.sample(rng);
}

double acceptance_rate_probe(const GbsRequest &req, int trials) {
    require(trials >= 1, ErrorKind::Validation, "trials must be >= 1");
    GbsSampler sampler(req);
    Rng rng(req.chain.seed);
    int hits = 0;
    for (int t = 0; t < trials; ++t) {
        hits += sampler.probe(rng) ? 1 : 0;
    }
    return static_cast<double>(hits) / trials;
}

}  // namespace gbs
