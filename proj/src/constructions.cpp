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

#include "gbs/constructions.hpp"

#include <cmath>
#include <deque>
#include <string>

namespace gbs {

ProductGraph cartesian_product_k2(const Graph &g, double c) {
    require(std::isfinite(c) && c > 0, ErrorKind::Validation, "c must be a positive real");
    const int n = g.vertex_count();
    const double c2 = c * c;

    ProductGraph pg;
    pg.base_vertex_count = n;
    pg.graph = Graph(2 * n);
    pg.origin.resize(static_cast<std::size_t>(2 * n));
    for (int v = 0; v < n; ++v) {
        pg.origin[static_cast<std::size_t>(v)] = {v, 1};
        pg.origin[static_cast<std::size_t>(v + n)] = {v, 2};
    }
    for (const auto &e : g.edges()) {
        pg.graph.add_edge(e.u, e.v, c2 * e.weight);
        pg.edge_class.push_back(ProductEdgeClass::Original);
    }
    for (const auto &e : g.edges()) {
        pg.graph.add_edge(e.u + n, e.v + n, c2 * e.weight);
        pg.edge_class.push_back(ProductEdgeClass::Copy);
    }
    for (int v = 0; v < n; ++v) {
        pg.graph.add_edge(v, v + n, 1.0);
        pg.edge_class.push_back(ProductEdgeClass::Rung);
    }
    return pg;
}

VertexSubset project_to_subset(const ProductGraph &pg, const Matching &pm) {
    require(pm.vertex_count() == pg.graph.vertex_count(), ErrorKind::Validation,
            "matching does not belong to this product graph");
    require(pm.is_perfect(), ErrorKind::NotPerfect, "projection needs a perfect matching");
    std::vector<int> members;
    for (int id : pm.edge_ids()) {
        if (pg.edge_class[static_cast<std::size_t>(id)] == ProductEdgeClass::Original) {
            const auto &e = pg.graph.edge(id);
            members.push_back(e.u);
            members.push_back(e.v);
        }
    }
    return VertexSubset(std::move(members));
}

std::string GadgetLabel::to_string() const {
    const std::string layer_tag = "^(" + std::to_string(layer) + ")";
    if (is_row_copy) {
        return "u_{" + std::to_string(index + 1) + "," + std::to_string(copy + 1) + "}" + layer_tag;
    }
    return "v_" + std::to_string(index + 1) + layer_tag;
}

BipartiteGadget bs_gadget(const Matrix<double> &a, int k) {
    const int m = static_cast<int>(a.rows());
    const int n = static_cast<int>(a.cols());
    require(m >= 1 && n >= 1, ErrorKind::Dimension, "matrix must have at least one row and one column");
    require(k >= 1, ErrorKind::Validation, "k must be a positive integer");
    require(static_cast<long long>(n) <= static_cast<long long>(m) * k, ErrorKind::Dimension,
            "need n <= m*k (n=" + std::to_string(n) + ", m=" + std::to_string(m) + ", k=" + std::to_string(k) + ")");
    for (double x : a.data()) {
        require(std::isfinite(x) && x >= 0, ErrorKind::Validation, "matrix entries must be finite and non-negative");
    }

    BipartiteGadget gd;
    gd.matrix = a;
    gd.rows = m;
    gd.cols = n;
    gd.k = k;
    const int total = 2 * n + 2 * m * k;
    gd.graph = Graph(total);
    gd.side.resize(static_cast<std::size_t>(total));
    gd.labels.resize(static_cast<std::size_t>(total));

    for (int layer = 1; layer <= 2; ++layer) {
        for (int i = 0; i < n; ++i) {
            const auto v = static_cast<std::size_t>(gd.v_vertex(i, layer));
            gd.side[v] = layer == 1 ? Side::Left : Side::Right;
            gd.labels[v] = {false, i, 0, layer};
        }
        for (int j = 0; j < m; ++j) {
            for (int t = 0; t < k; ++t) {
                const auto u = static_cast<std::size_t>(gd.u_vertex(j, t, layer));
                gd.side[u] = layer == 1 ? Side::Right : Side::Left;
                gd.labels[u] = {true, j, t, layer};
            }
        }
    }

    for (int layer = 1; layer <= 2; ++layer) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < m; ++j) {
                const double w = a(static_cast<std::size_t>(j), static_cast<std::size_t>(i));
                if (w == 0) {
                    continue;
                }
                for (int t = 0; t < k; ++t) {
                    gd.graph.add_edge(gd.v_vertex(i, layer), gd.u_vertex(j, t, layer), w);
                    gd.edge_class.push_back(layer == 1 ? GadgetEdgeClass::Layer1 : GadgetEdgeClass::Layer2);
                }
            }
        }
    }
    for (int j = 0; j < m; ++j) {
        for (int t = 0; t < k; ++t) {
            gd.graph.add_edge(gd.u_vertex(j, t, 1), gd.u_vertex(j, t, 2), 1.0);
            gd.edge_class.push_back(GadgetEdgeClass::Rung);
        }
    }
    return gd;
}

OccupancyVector extract_occupancy(const BipartiteGadget &gadget, const Matching &pm) {
    require(pm.vertex_count() == gadget.graph.vertex_count(), ErrorKind::Validation,
            "matching does not belong to this gadget");
    require(pm.is_perfect(), ErrorKind::NotPerfect, "occupancy extraction needs a perfect matching");
    OccupancyVector z{std::vector<int>(static_cast<std::size_t>(gadget.rows), 0)};
    for (int i = 0; i < gadget.cols; ++i) {
        const int u = pm.mate(gadget.v_vertex(i, 1));
        const auto &label = gadget.labels[static_cast<std::size_t>(u)];
        ++z.z[static_cast<std::size_t>(label.index)];
    }
    return z;
}

std::vector<Side> bipartition(const Graph &g) {
    const int n = g.vertex_count();
    std::vector<int> colour(static_cast<std::size_t>(n), -1);
    std::deque<int> queue;
    for (int s = 0; s < n; ++s) {
        if (colour[static_cast<std::size_t>(s)] >= 0) {
            continue;
        }
        colour[static_cast<std::size_t>(s)] = 0;
        queue.push_back(s);
        while (!queue.empty()) {
            const int x = queue.front();
            queue.pop_front();
            for (const auto &inc : g.neighbors(x)) {
                auto &c = colour[static_cast<std::size_t>(inc.vertex)];
                if (c < 0) {
                    c = 1 - colour[static_cast<std::size_t>(x)];
                    queue.push_back(inc.vertex);
                } else if (c == colour[static_cast<std::size_t>(x)]) {
                    fail(ErrorKind::NotBipartite, "odd cycle through vertex " + std::to_string(x));
                }
            }
        }
    }
    std::vector<Side> out(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        out[static_cast<std::size_t>(v)] = colour[static_cast<std::size_t>(v)] == 0 ? Side::Left : Side::Right;
    }
    return out;
}

}  // namespace gbs
