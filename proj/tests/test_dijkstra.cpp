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

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qsplit/dijkstra.hpp"

using namespace qsplit;

TEST(Dijkstra, SingleEdge) {
    auto g = DecodingGraph::from_edges(2, {{0, 1, 2.5, -1.0}});
    auto t = dijkstra(g, 0);
    EXPECT_DOUBLE_EQ(t.dist[1], 2.5);
}

TEST(Dijkstra, PathAdditivity) {
    auto g = DecodingGraph::from_edges(3, {{0, 1, 1.0, -1.0}, {1, 2, 2.0, -1.0}});
    auto t = dijkstra(g, 0);
    EXPECT_DOUBLE_EQ(t.dist[2], 3.0);
}

TEST(Dijkstra, MatchesFloydWarshallOnRandomGraphs) {
    Stream rng(11);
    for (int trial = 0; trial < 200; trial++) {
        auto g = oracles::random_graph(rng, 6, 4, 2);
        auto fw = oracles::floyd_warshall(g);
        for (int u = 0; u < g.num_vertices; u++) {
            auto t = dijkstra(g, u);
            for (int v = 0; v < g.num_vertices; v++)
                EXPECT_NEAR(t.dist[size_t(v)], fw[size_t(u)][size_t(v)], 1e-12);
        }
    }
}

TEST(Dijkstra, PathReconstructionWeightMatchesDistance) {
    Stream rng(12);
    for (int trial = 0; trial < 100; trial++) {
        auto g = oracles::random_graph(rng, 8, 6, 2);
        PathCache cache(g);
        int u = rng.uniform_int(g.num_vertices);
        int v = rng.uniform_int(g.num_vertices);
        if (cache.distance(u, v) == kInf)
            continue;
        EdgeSet path(g.edges.size());
        cache.append_path(u, v, path);
        EXPECT_NEAR(chain_weight(g, path), cache.distance(u, v), 1e-9);
        auto ends = boundary_of(g, path);
        if (u != v) {
            ASSERT_EQ(ends.size(), 2u);
            EXPECT_EQ(ends[0], std::min(u, v));
            EXPECT_EQ(ends[1], std::max(u, v));
        } else {
            EXPECT_TRUE(ends.empty());
        }
    }
}

TEST(Dijkstra, TriangleInequalityOnCache) {
    Stream rng(13);
    auto g = oracles::random_graph(rng, 10, 10, 3);
    PathCache cache(g);
    for (int u = 0; u < g.num_vertices; u++)
        for (int v = 0; v < g.num_vertices; v++)
            for (int w = 0; w < g.num_vertices; w++) {
                double duv = cache.distance(u, v);
                double duw = cache.distance(u, w);
                double dwv = cache.distance(w, v);
                if (duw < kInf && dwv < kInf)
                    EXPECT_LE(duv, duw + dwv + 1e-9);
            }
}

TEST(Dijkstra, CacheUpdateNoOp) {
    Stream rng(14);
    auto g = oracles::random_graph(rng, 8, 6, 2);
    auto cache = weighted_distances(g, {0, 1});
    size_t before = cache.size();
    cache.update({}, {});
    EXPECT_EQ(cache.size(), before);
}

TEST(Dijkstra, CacheUpdateMatchesFreshBuild) {
    Stream rng(15);
    auto g = oracles::random_graph(rng, 12, 10, 3);
    PathCache cache(g);
    std::vector<int> terminals;
    for (int step = 0; step < 100; step++) {
        bool add = terminals.empty() || rng.bernoulli(0.55);
        if (add) {
            int v = rng.uniform_int(g.num_vertices);
            if (std::find(terminals.begin(), terminals.end(), v) == terminals.end()) {
                terminals.push_back(v);
                cache.update({}, {v});
            }
        } else {
            size_t i = size_t(rng.uniform_int(int(terminals.size())));
            cache.update({terminals[i]}, {});
            terminals.erase(terminals.begin() + long(i));
        }
    }
    for (int u : terminals) {
        auto fresh = dijkstra(g, u);
        const auto& cached = cache.tree(u);
        EXPECT_EQ(fresh.dist, cached.dist);
        EXPECT_EQ(fresh.parent_edge, cached.parent_edge);
        EXPECT_EQ(fresh.nearest_boundary, cached.nearest_boundary);
    }
}

TEST(Dijkstra, BoundaryDistance) {
    //  0 --1.0-- 1 --0.5-- t2 ; 0 --3.0-- t3
    auto g = DecodingGraph::from_edges(4, {{0, 1, 1.0, -1.0}, {1, 2, 0.5, -1.0}, {0, 3, 3.0, -1.0}},
                                       {2, 3});
    PathCache cache(g);
    EXPECT_DOUBLE_EQ(cache.boundary_distance(0), 1.5);
    EdgeSet path(g.edges.size());
    cache.append_boundary_path(0, path);
    EXPECT_EQ(path.popcount(), 2u);
}

TEST(Dijkstra, DisconnectedPairsReportInfinity) {
    auto g = DecodingGraph::from_edges(4, {{0, 1, 1.0, -1.0}, {2, 3, 1.0, -1.0}});
    PathCache cache(g);
    EXPECT_EQ(cache.distance(0, 2), kInf);
}
