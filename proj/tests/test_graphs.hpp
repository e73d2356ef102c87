// Copyright 2026 qsplit Contributors
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
//
// Shared miniature decoding graphs for tests.

#ifndef QSPLIT_TESTS_TEST_GRAPHS_HPP
#define QSPLIT_TESTS_TEST_GRAPHS_HPP

#include "qsplit/graph.hpp"

namespace qsplit::testgraphs {

/// Cycle graph C_n with Γ = {edge 0}, T = ∅, unit weights.
inline DecodingGraph cycle_graph(int n) {
    std::vector<GraphEdge> edges;
    for (int v = 0; v < n; v++)
        edges.push_back({v, (v + 1) % n, 1.0, -1.0});
    auto g = DecodingGraph::from_edges(n, edges, {}, {0});
    g.seed_chain = EdgeSet(g.edges.size());
    for (int k = 0; k < n; k++)
        g.seed_chain.add(size_t(k));  // the full cycle: empty syndrome, odd parity
    return g;
}

/// Two-rung ladder with a hanging edge pair on each end, mimicking the
/// two-defect geometry at toy scale. 11 edges.
///
///   tLa - a0 - a1 - a2 - tRa
///          |    |    |
///   tLb - b0 - b1 - b2 - tRb
///
/// Γ = the two left hanging edges (a cut); seed = top path tLa..tRa.
inline DecodingGraph two_defect_toy() {
    // vertices: a0,a1,a2 = 0,1,2 ; b0,b1,b2 = 3,4,5 ; tLa,tRa,tLb,tRb = 6,7,8,9
    std::vector<GraphEdge> edges = {
        {6, 0, 1.0, -1.0},  // 0: hanging left top (Γ)
        {0, 1, 1.0, -1.0},  // 1
        {1, 2, 1.0, -1.0},  // 2
        {2, 7, 1.0, -1.0},  // 3: hanging right top
        {8, 3, 1.0, -1.0},  // 4: hanging left bottom (Γ)
        {3, 4, 1.0, -1.0},  // 5
        {4, 5, 1.0, -1.0},  // 6
        {5, 9, 1.0, -1.0},  // 7: hanging right bottom
        {0, 3, 1.0, -1.0},  // 8
        {1, 4, 1.0, -1.0},  // 9
        {2, 5, 1.0, -1.0},  // 10
    };
    auto g = DecodingGraph::from_edges(10, edges, {6, 7, 8, 9}, {0, 4});
    g.seed_chain = EdgeSet(g.edges.size());
    for (int k : {0, 1, 2, 3})
        g.seed_chain.add(size_t(k));
    return g;
}

/// Degenerate-syndrome gadget: four marked vertices 1,2,3,4 joined by
///  - a unique 6-edge path 1-2 and a unique 6-edge path 3-4,
///  - 3x3 grid patches between 1-4 and between 2-3 (20 shortest paths each).
/// Γ cuts the 1-4 patch, so the unique (1,2)+(3,4) chain is even while all
/// 400 (1,4)+(2,3) chains are odd. Minimum weight is 12.
struct FigureGraph {
    DecodingGraph graph;
    std::vector<int> marked;  // the four special vertices in order 1,2,3,4
};

inline FigureGraph figure_graph() {
    std::vector<GraphEdge> edges;
    int next = 0;
    auto fresh = [&]() { return next++; };
    int v1 = fresh(), v2 = fresh(), v3 = fresh(), v4 = fresh();

    auto add_path = [&](int a, int b, int len) {
        int prev = a;
        for (int i = 0; i < len - 1; i++) {
            int mid = fresh();
            edges.push_back({prev, mid, 1.0, -1.0});
            prev = mid;
        }
        edges.push_back({prev, b, 1.0, -1.0});
    };
    // grid patch with corners a (0,0) and b (3,3); returns ids of vertical
    // edges crossing between columns 1 and 2 (a cut separating a from b).
    auto add_grid = [&](int a, int b, std::vector<int>* cut) {
        int id[4][4];
        for (int y = 0; y < 4; y++)
            for (int x = 0; x < 4; x++) {
                if (x == 0 && y == 0)
                    id[y][x] = a;
                else if (x == 3 && y == 3)
                    id[y][x] = b;
                else
                    id[y][x] = fresh();
            }
        for (int y = 0; y < 4; y++)
            for (int x = 0; x < 3; x++) {
                if (cut && x == 1)
                    cut->push_back(int(edges.size()));
                edges.push_back({id[y][x], id[y][x + 1], 1.0, -1.0});
            }
        for (int y = 0; y < 3; y++)
            for (int x = 0; x < 4; x++)
                edges.push_back({id[y][x], id[y + 1][x], 1.0, -1.0});
    };

    add_path(v1, v2, 6);
    add_path(v3, v4, 6);
    std::vector<int> cut;
    add_grid(v1, v4, &cut);
    add_grid(v2, v3, nullptr);

    FigureGraph out;
    out.graph = DecodingGraph::from_edges(next, edges, {}, cut);
    out.marked = {v1, v2, v3, v4};
    return out;
}

}  // namespace qsplit::testgraphs

#endif
