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

#pragma once

#include <map>
#include <span>
#include <vector>

#include "gbs/graph.hpp"

namespace gbs {

/// Canonical outcome encoding: a sorted vertex list for subsets, the
/// fixed-length count tuple for occupancy vectors, sorted edge ids for
/// matchings.
using OutcomeKey = std::vector<int>;

enum class OutcomeKind { Subset, Occupancy, Matching };

const char *to_string(OutcomeKind kind);

inline OutcomeKey key_of(const VertexSubset &s) {
    return {s.members().begin(), s.members().end()};
}
inline OutcomeKey key_of(const OccupancyVector &z) {
    return z.z;
}
inline OutcomeKey key_of(const Matching &m) {
    return m.edge_ids();
}

/// Finite probability table. Entries are non-negative and sum to 1; the
/// unnormalised total the table was built from is kept as `normalizer`.
class DistributionTable {
   public:
    DistributionTable() = default;
    explicit DistributionTable(OutcomeKind kind) : kind_(kind) {
    }

    /// Normalises non-negative weights. Zero-weight outcomes are dropped.
    /// Throws ZeroNormalizer if every weight is 0.
    static DistributionTable from_weights(OutcomeKind kind, const std::map<OutcomeKey, double> &weights);

    /// Takes already-normalised probabilities verbatim (they must sum to 1
    /// within 1e-9); used when reading tables back from disk.
    static DistributionTable from_probabilities(OutcomeKind kind, std::map<OutcomeKey, double> probabilities,
                                                double normalizer);

    OutcomeKind kind() const noexcept {
        return kind_;
    }
    const std::map<OutcomeKey, double> &entries() const noexcept {
        return entries_;
    }
    double normalizer() const noexcept {
        return normalizer_;
    }
    std::size_t size() const noexcept {
        return entries_.size();
    }

    /// 0 for keys not in the table.
    double probability(const OutcomeKey &key) const;

    /// Sum of the stored probabilities (1 up to rounding).
    double total() const;

   private:
    OutcomeKind kind_ = OutcomeKind::Subset;
    std::map<OutcomeKey, double> entries_;
    double normalizer_ = 1.0;
};

/// Half the l1 distance; missing keys read as 0.
double tv_distance(const DistributionTable &p, const DistributionTable &q);

/// Largest |p(x) - q(x)| over the union of supports.
double max_abs_deviation(const DistributionTable &p, const DistributionTable &q);

/// Frequency table of a sample stream. Requires at least one sample.
DistributionTable empirical_distribution(OutcomeKind kind, std::span<const OutcomeKey> samples);

}  // namespace gbs
