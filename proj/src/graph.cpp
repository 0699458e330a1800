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

#include "gbs/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace gbs {

Graph::Graph(int vertex_count) {
    require(vertex_count >= 0, ErrorKind::Validation, "vertex count must be non-negative");
    adjacency_.resize(static_cast<std::size_t>(vertex_count));
}

int Graph::add_edge(int u, int v, double weight) {
    const int n = vertex_count();
    require(u >= 0 && u < n && v >= 0 && v < n, ErrorKind::Validation,
            "edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range for " +
                std::to_string(n) + " vertices");
    require(u != v, ErrorKind::Validation, "self-loop at vertex " + std::to_string(u));
    require(std::isfinite(weight) && weight > 0, ErrorKind::Validation,
            "edge weights must be finite and strictly positive");
    require(!find_edge(u, v).has_value(), ErrorKind::Validation,
            "duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    const int id = edge_count();
    edges_.push_back({u, v, weight});
    adjacency_[static_cast<std::size_t>(u)].push_back({v, id});
    adjacency_[static_cast<std::size_t>(v)].push_back({u, id});
    return id;
}

std::optional<int> Graph::find_edge(int u, int v) const {
    if (u < 0 || v < 0 || u >= vertex_count() || v >= vertex_count()) {
        return std::nullopt;
    }
    // Scan the shorter list.
    const auto &a = adjacency_[static_cast<std::size_t>(u)];
    const auto &b = adjacency_[static_cast<std::size_t>(v)];
    const auto &list = a.size() <= b.size() ? a : b;
    const int target = a.size() <= b.size() ? v : u;
    for (const auto &inc : list) {
        if (inc.vertex == target) {
            return inc.edge;
        }
    }
    return std::nullopt;
}

double Graph::weight(int u, int v) const {
    auto id = find_edge(u, v);
    return id ? edges_[static_cast<std::size_t>(*id)].weight : 0.0;
}

double Graph::max_weight_or_one() const {
    double best = 1.0;
    for (const auto &e : edges_) {
        best = std::max(best, e.weight);
    }
    return best;
}

Matrix<double> Graph::adjacency() const {
    const auto n = static_cast<std::size_t>(vertex_count());
    Matrix<double> a(n, n, 0.0);
    for (const auto &e : edges_) {
        a(static_cast<std::size_t>(e.u), static_cast<std::size_t>(e.v)) = e.weight;
        a(static_cast<std::size_t>(e.v), static_cast<std::size_t>(e.u)) = e.weight;
    }
    return a;
}

Graph Graph::scaled(double factor) const {
    require(std::isfinite(factor) && factor > 0, ErrorKind::Validation, "scale factor must be positive");
    Graph out = *this;
    for (auto &e : out.edges_) {
        e.weight *= factor;
    }
    return out;
}

bool Graph::operator==(const Graph &other) const {
    if (vertex_count() != other.vertex_count() || edge_count() != other.edge_count()) {
        return false;
    }
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const auto &a = edges_[i];
        const auto &b = other.edges_[i];
        if (a.u != b.u || a.v != b.v || a.weight != b.weight) {
            return false;
        }
    }
    return true;
}

Matching::Matching(int vertex_count)
    : mate_(static_cast<std::size_t>(vertex_count), -1), mate_edge_(static_cast<std::size_t>(vertex_count), -1) {
}

Matching Matching::from_edges(const Graph &g, std::span<const int> edge_ids) {
    Matching m(g.vertex_count());
    for (int id : edge_ids) {
        require(id >= 0 && id < g.edge_count(), ErrorKind::Validation, "edge id " + std::to_string(id) + " not in graph");
        const auto &e = g.edge(id);
        require(!m.is_matched(e.u) && !m.is_matched(e.v), ErrorKind::Validation,
                "edges share an endpoint; not a matching");
        m.add(g, id);
    }
    return m;
}

void Matching::add(const Graph &g, int edge_id) {
    const auto &e = g.edge(edge_id);
    auto u = static_cast<std::size_t>(e.u);
    auto v = static_cast<std::size_t>(e.v);
    require(mate_[u] < 0 && mate_[v] < 0, ErrorKind::Validation, "cannot add edge: endpoint already matched");
    mate_[u] = e.v;
    mate_[v] = e.u;
    mate_edge_[u] = edge_id;
    mate_edge_[v] = edge_id;
    ++size_;
}

void Matching::remove(const Graph &g, int edge_id) {
    const auto &e = g.edge(edge_id);
    auto u = static_cast<std::size_t>(e.u);
    auto v = static_cast<std::size_t>(e.v);
    require(mate_edge_[u] == edge_id, ErrorKind::Validation, "cannot remove edge: not in matching");
    mate_[u] = mate_[v] = -1;
    mate_edge_[u] = mate_edge_[v] = -1;
    --size_;
}

std::vector<int> Matching::edge_ids() const {
    std::vector<int> ids;
    ids.reserve(static_cast<std::size_t>(size_));
    for (std::size_t v = 0; v < mate_.size(); ++v) {
        if (mate_[v] > static_cast<int>(v)) {
            ids.push_back(mate_edge_[v]);
        }
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

std::vector<int> Matching::unmatched_vertices() const {
    std::vector<int> out;
    for (std::size_t v = 0; v < mate_.size(); ++v) {
        if (mate_[v] < 0) {
            out.push_back(static_cast<int>(v));
        }
    }
    return out;
}

double Matching::weight(const Graph &g) const {
    double w = 1.0;
    for (int id : edge_ids()) {
        w *= g.edge(id).weight;
    }
    return w;
}

bool Matching::is_valid_in(const Graph &g) const {
    if (vertex_count() != g.vertex_count()) {
        return false;
    }
    int matched = 0;
    for (int v = 0; v < vertex_count(); ++v) {
        const int w = mate(v);
        const int id = mate_edge(v);
        if ((w < 0) != (id < 0)) {
            return false;
        }
        if (w < 0) {
            continue;
        }
        if (id >= g.edge_count() || w >= vertex_count() || mate(w) != v || mate_edge(w) != id) {
            return false;
        }
        const auto &e = g.edge(id);
        if (!((e.u == v && e.v == w) || (e.u == w && e.v == v))) {
            return false;
        }
        ++matched;
    }
    return matched == 2 * size_;
}

VertexSubset::VertexSubset(std::vector<int> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool VertexSubset::contains(int v) const {
    return std::binary_search(members_.begin(), members_.end(), v);
}

int OccupancyVector::total() const {
    return std::accumulate(z.begin(), z.end(), 0);
}

}  // namespace gbs
