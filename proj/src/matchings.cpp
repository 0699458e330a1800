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

#include "gbs/matchings.hpp"

#include <bit>
#include <string>
#include <unordered_map>

namespace gbs {

namespace {

void check_size(const Graph &g, const OracleLimits &limits) {
    require(g.vertex_count() <= limits.matching_max_vertices, ErrorKind::SizeLimit,
            "matching enumeration on " + std::to_string(g.vertex_count()) + " vertices exceeds cap " +
                std::to_string(limits.matching_max_vertices));
}

// Decides vertices in increasing order: each undecided vertex is either left
// unmatched or matched to a higher, still-free neighbour. Every matching is
// produced exactly once.
void visit_matchings(const Graph &g, int v, Matching &m, const std::function<void(const Matching &)> &visit) {
    const int n = g.vertex_count();
    while (v < n && m.is_matched(v)) {
        ++v;
    }
    if (v == n) {
        visit(m);
        return;
    }
    visit_matchings(g, v + 1, m, visit);
    for (const auto &inc : g.neighbors(v)) {
        if (inc.vertex > v && !m.is_matched(inc.vertex)) {
            m.add(g, inc.edge);
            visit_matchings(g, v + 1, m, visit);
            m.remove(g, inc.edge);
        }
    }
}

void visit_perfect(const Graph &g, int v, Matching &m, std::vector<Matching> &out) {
    const int n = g.vertex_count();
    while (v < n && m.is_matched(v)) {
        ++v;
    }
    if (v == n) {
        out.push_back(m);
        return;
    }
    for (const auto &inc : g.neighbors(v)) {
        if (!m.is_matched(inc.vertex)) {
            m.add(g, inc.edge);
            visit_perfect(g, v + 1, m, out);
            m.remove(g, inc.edge);
        }
    }
}

// Matching polynomial by eliminating the lowest vertex v of S:
//   Z(S) = Z(S \ v) + sum_{u in N(v) cap S} w(v,u) x Z(S \ {u,v}).
template <typename T, typename Weight>
class ProfileRecursion {
   public:
    ProfileRecursion(const Graph &g, Weight weight) : g_(g), weight_(weight) {
    }

    const std::vector<T> &profile(std::uint32_t set) {
        auto it = memo_.find(set);
        if (it != memo_.end()) {
            return it->second;
        }
        std::vector<T> result;
        if (set == 0) {
            result.push_back(T(1));
        } else {
            const int v = std::countr_zero(set);
            const std::uint32_t without_v = set & (set - 1);
            result = profile(without_v);
            for (const auto &inc : g_.neighbors(v)) {
                const std::uint32_t bit = std::uint32_t{1} << inc.vertex;
                if ((without_v & bit) == 0) {
                    continue;
                }
                const std::vector<T> sub = profile(without_v & ~bit);
                const T w = weight_(g_.edge(inc.edge));
                if (result.size() < sub.size() + 1) {
                    result.resize(sub.size() + 1, T(0));
                }
                for (std::size_t k = 0; k < sub.size(); ++k) {
                    result[k + 1] += w * sub[k];
                }
            }
        }
        return memo_.emplace(set, std::move(result)).first->second;
    }

   private:
    const Graph &g_;
    Weight weight_;
    std::unordered_map<std::uint32_t, std::vector<T>> memo_;
};

template <typename T, typename Weight>
PartitionProfileT<T> profile_of(const Graph &g, Weight weight, const OracleLimits &limits) {
    check_size(g, limits);
    require(g.vertex_count() <= 31, ErrorKind::SizeLimit, "profile recursion supports at most 31 vertices");
    ProfileRecursion<T, Weight> rec(g, weight);
    const std::uint32_t all =
        g.vertex_count() == 0 ? 0u : static_cast<std::uint32_t>((std::uint64_t{1} << g.vertex_count()) - 1);
    PartitionProfileT<T> out;
    out.z_by_size = rec.profile(all);
    while (out.z_by_size.size() > 1 && out.z_by_size.back() == T(0)) {
        out.z_by_size.pop_back();
    }
    out.total = T(0);
    for (const auto &z : out.z_by_size) {
        out.total += z;
    }
    return out;
}

}  // namespace

void for_each_matching(const Graph &g, const std::function<void(const Matching &)> &visit,
                       const OracleLimits &limits) {
    check_size(g, limits);
    Matching m(g.vertex_count());
    visit_matchings(g, 0, m, visit);
}

std::vector<std::vector<Matching>> enumerate_matchings(const Graph &g, const OracleLimits &limits) {
    std::vector<std::vector<Matching>> by_size(static_cast<std::size_t>(g.vertex_count() / 2 + 1));
    for_each_matching(
        g, [&](const Matching &m) { by_size[static_cast<std::size_t>(m.size())].push_back(m); }, limits);
    while (by_size.size() > 1 && by_size.back().empty()) {
        by_size.pop_back();
    }
    return by_size;
}

std::vector<Matching> enumerate_perfect_matchings(const Graph &g, const OracleLimits &limits) {
    check_size(g, limits);
    std::vector<Matching> out;
    if (g.vertex_count() % 2 != 0) {
        return out;
    }
    Matching m(g.vertex_count());
    visit_perfect(g, 0, m, out);
    return out;
}

PartitionProfile partition_profile(const Graph &g, const OracleLimits &limits) {
    return profile_of<double>(g, [](const Edge &e) { return e.weight; }, limits);
}

ExactPartitionProfile partition_profile_exact(const Graph &g, const OracleLimits &limits) {
    return profile_of<Rational>(g, [](const Edge &e) { return to_rational(e.weight); }, limits);
}

std::vector<BigInt> matching_counts(const Graph &g, const OracleLimits &limits) {
    return profile_of<BigInt>(g, [](const Edge &) { return BigInt(1); }, limits).z_by_size;
}

}  // namespace gbs
