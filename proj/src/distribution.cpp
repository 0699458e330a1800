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

#include "gbs/distribution.hpp"

#include <algorithm>
#include <cmath>

namespace gbs {

const char *to_string(OutcomeKind kind) {
    switch (kind) {
        case OutcomeKind::Subset:
            return "subset";
        case OutcomeKind::Occupancy:
            return "occupancy";
        case OutcomeKind::Matching:
            return "matching";
    }
    return "?";
}

DistributionTable DistributionTable::from_weights(OutcomeKind kind, const std::map<OutcomeKey, double> &weights) {
    double total = 0;
    for (const auto &[key, w] : weights) {
        require(std::isfinite(w) && w >= 0, ErrorKind::Validation, "outcome weights must be finite and non-negative");
        total += w;
    }
    require(total > 0, ErrorKind::ZeroNormalizer, "every outcome has zero weight");
    DistributionTable t(kind);
    t.normalizer_ = total;
    for (const auto &[key, w] : weights) {
        if (w > 0) {
            t.entries_.emplace(key, w / total);
        }
    }
    return t;
}

DistributionTable DistributionTable::from_probabilities(OutcomeKind kind, std::map<OutcomeKey, double> probabilities,
                                                        double normalizer) {
    double total = 0;
    for (const auto &[key, p] : probabilities) {
        require(std::isfinite(p) && p > 0 && p <= 1, ErrorKind::Validation, "probabilities must lie in (0,1]");
        total += p;
    }
    require(std::abs(total - 1) <= 1e-9, ErrorKind::Validation, "probabilities do not sum to 1");
    require(std::isfinite(normalizer) && normalizer > 0, ErrorKind::Validation, "normalizer must be positive");
    DistributionTable t(kind);
    t.entries_ = std::move(probabilities);
    t.normalizer_ = normalizer;
    return t;
}

double DistributionTable::probability(const OutcomeKey &key) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? 0.0 : it->second;
}

double DistributionTable::total() const {
    double s = 0;
    for (const auto &[key, p] : entries_) {
        s += p;
    }
    return s;
}

namespace {

// Walks the sorted union of both key sets.
template <typename F>
void merge_walk(const DistributionTable &p, const DistributionTable &q, F &&f) {
    auto a = p.entries().begin();
    auto b = q.entries().begin();
    const auto a_end = p.entries().end();
    const auto b_end = q.entries().end();
    while (a != a_end || b != b_end) {
        if (b == b_end || (a != a_end && a->first < b->first)) {
            f(a->second, 0.0);
            ++a;
        } else if (a == a_end || b->first < a->first) {
            f(0.0, b->second);
            ++b;
        } else {
            f(a->second, b->second);
            ++a;
            ++b;
        }
    }
}

}  // namespace

double tv_distance(const DistributionTable &p, const DistributionTable &q) {
    double sum = 0;
    merge_walk(p, q, [&](double x, double y) { sum += std::abs(x - y); });
    return std::min(1.0, 0.5 * sum);
}

double max_abs_deviation(const DistributionTable &p, const DistributionTable &q) {
    double worst = 0;
    merge_walk(p, q, [&](double x, double y) { worst = std::max(worst, std::abs(x - y)); });
    return worst;
}

DistributionTable empirical_distribution(OutcomeKind kind, std::span<const OutcomeKey> samples) {
    require(!samples.empty(), ErrorKind::Validation, "empirical distribution needs at least one sample");
    std::map<OutcomeKey, double> counts;
    for (const auto &s : samples) {
        counts[s] += 1.0;
    }
    return DistributionTable::from_weights(kind, counts);
}

}  // namespace gbs
