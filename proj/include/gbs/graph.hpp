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

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gbs/matrix.hpp"

namespace gbs {

struct Edge {
    int u;
    int v;
    double weight;

    int other(int x) const noexcept {
        return x == u ? v : u;
    }
};

struct Incidence {
    int vertex;
    int edge;
};

/// Undirected simple graph with strictly positive edge weights. Vertices are
/// dense indices [0, vertex_count); edges are dense ids in insertion order.
/// Absent edges have weight 0.
class Graph {
   public:
    Graph() = default;
    explicit Graph(int vertex_count);

    /// Rejects self-loops, duplicates (multigraph input), out-of-range
    /// endpoints, and non-positive or non-finite weights.
    int add_edge(int u, int v, double weight = 1.0);

    int vertex_count() const noexcept {
        return static_cast<int>(adjacency_.size());
    }
    int edge_count() const noexcept {
        return static_cast<int>(edges_.size());
    }

    const Edge &edge(int id) const {
        return edges_[static_cast<std::size_t>(id)];
    }
    std::span<const Edge> edges() const noexcept {
        return edges_;
    }
    std::span<const Incidence> neighbors(int v) const {
        return adjacency_[static_cast<std::size_t>(v)];
    }

    std::optional<int> find_edge(int u, int v) const;
    double weight(int u, int v) const;

    /// max over edges of {1, weight}; 1 for an edgeless graph.
    double max_weight_or_one() const;

    Matrix<double> adjacency() const;

    /// Same topology, every weight multiplied by `factor`.
    Graph scaled(double factor) const;

    bool operator==(const Graph &other) const;

   private:
    std::vector<Edge> edges_;
    std::vector<std::vector<Incidence>> adjacency_;
};

/// Vertex-disjoint edge set of a particular graph. Stores, per vertex, the id
/// of the matched edge (or -1) and the partner vertex (or -1), so that chain
/// moves are O(1). Operations that change the matching take the owning graph
/// to resolve endpoints.
class Matching {
   public:
    Matching() = default;
    explicit Matching(int vertex_count);

    /// Validates that every id is an edge of `g` and that no two share an
    /// endpoint.
    static Matching from_edges(const Graph &g, std::span<const int> edge_ids);

    int vertex_count() const noexcept {
        return static_cast<int>(mate_.size());
    }
    int size() const noexcept {
        return size_;
    }
    int mate(int v) const {
        return mate_[static_cast<std::size_t>(v)];
    }
    int mate_edge(int v) const {
        return mate_edge_[static_cast<std::size_t>(v)];
    }
    bool is_matched(int v) const {
        return mate_[static_cast<std::size_t>(v)] >= 0;
    }
    bool contains(const Graph &g, int edge_id) const {
        return mate_edge_[static_cast<std::size_t>(g.edge(edge_id).u)] == edge_id;
    }

    int unmatched_count() const noexcept {
        return vertex_count() - 2 * size_;
    }
    bool is_perfect() const noexcept {
        return unmatched_count() == 0;
    }
    bool is_near_perfect() const noexcept {
        return unmatched_count() == 2;
    }

    /// Preconditions are checked: the edge must be free (add) or present
    /// (remove).
    void add(const Graph &g, int edge_id);
    void remove(const Graph &g, int edge_id);

    /// Sorted edge ids.
    std::vector<int> edge_ids() const;
    std::vector<int> unmatched_vertices() const;

    /// Product of edge weights under `g`.
    double weight(const Graph &g) const;

    /// Full structural check against `g`; used by tests and debug builds.
    bool is_valid_in(const Graph &g) const;

    bool operator==(const Matching &other) const = default;

   private:
    std::vector<int> mate_;
    std::vector<int> mate_edge_;
    int size_ = 0;
};

/// Sorted, duplicate-free vertex set.
class VertexSubset {
   public:
    VertexSubset() = default;
    explicit VertexSubset(std::vector<int> members);

    std::span<const int> members() const noexcept {
        return members_;
    }
    std::size_t size() const noexcept {
        return members_.size();
    }
    bool contains(int v) const;

    bool operator==(const VertexSubset &other) const = default;
    auto operator<=>(const VertexSubset &other) const = default;

   private:
    std::vector<int> members_;
};

/// Boson-sampling outcome z in Phi_{m,n}: m non-negative counts summing to n.
struct OccupancyVector {
    std::vector<int> z;

    int total() const;
    bool operator==(const OccupancyVector &other) const = default;
    auto operator<=>(const OccupancyVector &other) const = default;
};

}  // namespace gbs
