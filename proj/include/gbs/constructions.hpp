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

// The two graph constructions the samplers are built on:
//
//  * G x K2 (Cartesian product with an edge): two copies of G joined by the
//    "rung" edges (v, v'). Perfect matchings of the product, projected onto
//    the endpoints of original-copy edges, are distributed as the graph GBS
//    distribution when every non-rung edge carries weight c^2.
//
//  * The boson-sampling gadget for an m x n non-negative matrix A: a
//    bipartite graph in which each of the m rows is blown up into k
//    interchangeable copies on each of two layers. Perfect matchings,
//    projected onto the row-occupancy of layer 1, are distributed within
//    e^{-eps/2} (multiplicatively) of |Perm(A_z)|^2 / prod z_i!.

#pragma once

#include <string>
#include <vector>

#include "gbs/graph.hpp"
#include "gbs/matrix.hpp"

namespace gbs {

enum class ProductEdgeClass { Original, Copy, Rung };

struct ProductOrigin {
    int vertex;  // vertex of the base graph
    int copy;    // 1 or 2
};

struct ProductGraph {
    Graph graph;
    int base_vertex_count = 0;
    std::vector<ProductOrigin> origin;        // per product vertex
    std::vector<ProductEdgeClass> edge_class;  // per product edge

    int copy_of(int v, int which) const {
        return which == 1 ? v : v + base_vertex_count;
    }
};

/// Vertex v of `g` maps to v (copy 1) and v + n (copy 2). Edge ids: the
/// original edges in `g`'s order, then their copies, then the n rungs.
/// Original and copy edges both weigh c^2 * lambda_e (lambda_e = 1 for
/// unweighted input); rungs have weight 1.
ProductGraph cartesian_product_k2(const Graph &g, double c);

/// Endpoints (in base-graph indices) of the original-copy edges of a perfect
/// matching. Throws NotPerfect otherwise.
VertexSubset project_to_subset(const ProductGraph &pg, const Matching &pm);

enum class Side { Left, Right };

enum class GadgetEdgeClass { Layer1, Layer2, Rung };

/// Label of a gadget vertex: v_i^(layer) or u_{j,t}^(layer), all indices
/// zero-based.
struct GadgetLabel {
    bool is_row_copy;  // u (true) or v (false)
    int index;         // i for v, j for u
    int copy;          // t for u, unused (0) for v
    int layer;         // 1 or 2

    std::string to_string() const;
};

/// Vertex layout: L1 = [0, n), R1 = [n, n + mk), R2 = [n + mk, n + 2mk),
/// L2 = [n + 2mk, 2n + 2mk). Within R_l, u_{j,t} sits at offset j*k + t.
/// Sides: L1 and R2 are Left, R1 and L2 are Right.
struct BipartiteGadget {
    Graph graph;
    Matrix<double> matrix;  // the m x n input
    int rows = 0;  // m
    int cols = 0;  // n
    int k = 0;
    std::vector<Side> side;
    std::vector<GadgetLabel> labels;
    std::vector<GadgetEdgeClass> edge_class;

    int v_vertex(int i, int layer) const {
        return layer == 1 ? i : cols + 2 * rows * k + i;
    }
    int u_vertex(int j, int t, int layer) const {
        return cols + (layer == 1 ? 0 : rows * k) + j * k + t;
    }
};

/// Gadget for the m x n matrix `a` with k copies per row. The edge
/// (v_i, u_{j,t}) on each layer exists iff a(j, i) != 0 and carries weight
/// a(j, i); every rung (u_{j,t}^(1), u_{j,t}^(2)) has weight 1.
/// Throws DimensionError if n > m*k, ValidationError on negative entries.
/// All-zero columns are accepted here; the samplers detect the zero
/// normalizer.
BipartiteGadget bs_gadget(const Matrix<double> &a, int k);

/// z_j = number of layer-1 copies of row j matched to a column vertex.
/// Throws NotPerfect if `pm` is not perfect.
OccupancyVector extract_occupancy(const BipartiteGadget &gadget, const Matching &pm);

/// Two-colouring of `g` (component-wise BFS, lowest vertex of each component
/// on the Left). Throws NotBipartite.
std::vector<Side> bipartition(const Graph &g);

}  // namespace gbs
