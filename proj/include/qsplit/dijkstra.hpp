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

#ifndef QSPLIT_DIJKSTRA_HPP
#define QSPLIT_DIJKSTRA_HPP

#include <queue>
#include <unordered_map>

#include "qsplit/graph.hpp"

namespace qsplit {

/// Single-source shortest path tree. Pop order (distance, vertex id) and
/// relaxations in edge id order make the tree deterministic.
struct ShortestPathTree {
    int source = -1;
    std::vector<double> dist;
    std::vector<int> parent_edge;  // -1 at source / unreachable
    int nearest_boundary = -1;     // T vertex minimizing dist, -1 if none reachable
    double boundary_dist = kInf;
};

inline ShortestPathTree dijkstra(const DecodingGraph& g, int source) {
    ShortestPathTree t;
    t.source = source;
    t.dist.assign(size_t(g.num_vertices), kInf);
    t.parent_edge.assign(size_t(g.num_vertices), -1);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    t.dist[size_t(source)] = 0;
    pq.push({0.0, source});
    std::vector<uint8_t> done(size_t(g.num_vertices), 0);
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (done[size_t(u)])
            continue;
        done[size_t(u)] = 1;
        for (auto [v, k] : g.adjacency[size_t(u)]) {
            double nd = d + g.edges[size_t(k)].weight;
            if (nd < t.dist[size_t(v)]) {
                t.dist[size_t(v)] = nd;
                t.parent_edge[size_t(v)] = k;
                pq.push({nd, v});
            }
        }
    }
    for (int v = 0; v < g.num_vertices; v++) {
        if (g.is_boundary(v) && t.dist[size_t(v)] < t.boundary_dist) {
            t.boundary_dist = t.dist[size_t(v)];
            t.nearest_boundary = v;
        }
    }
    return t;
}

/// Cache of shortest path trees keyed by terminal vertex. Distances between
/// cached terminals and to the boundary set stay valid because the graph is
/// immutable; updating the terminal set only runs searches from new vertices.
class PathCache {
   public:
    PathCache() = default;
    explicit PathCache(const DecodingGraph& g) : g_(&g) {}

    const DecodingGraph& graph() const {
        return *g_;
    }

    bool has(int u) const {
        return trees_.count(u) != 0;
    }

    const ShortestPathTree& tree(int u) {
        auto it = trees_.find(u);
        if (it == trees_.end())
            it = trees_.emplace(u, dijkstra(*g_, u)).first;
        return it->second;
    }

    void ensure(const std::vector<int>& terminals) {
        for (int u : terminals)
            tree(u);
    }

    void update(const std::vector<int>& removed, const std::vector<int>& added) {
        for (int u : removed)
            trees_.erase(u);
        for (int u : added)
            tree(u);
    }

    double distance(int u, int v) {
        return tree(u).dist[size_t(v)];
    }

    double boundary_distance(int u) {
        return tree(u).boundary_dist;
    }

    /// Minimum weight path from u to v as an edge set.
    void append_path(int u, int v, EdgeSet& out) {
        const auto& t = tree(u);
        if (t.dist[size_t(v)] == kInf)
            throw InfeasibleSyndromeError("no path between terminals");
        int cur = v;
        while (cur != u) {
            int k = t.parent_edge[size_t(cur)];
            out.flip(size_t(k));
            const auto& e = g_->edges[size_t(k)];
            cur = e.u == cur ? e.v : e.u;
        }
    }

    void append_boundary_path(int u, EdgeSet& out) {
        const auto& t = tree(u);
        if (t.nearest_boundary < 0)
            throw InfeasibleSyndromeError("no path from terminal to boundary");
        append_path(u, t.nearest_boundary, out);
    }

    size_t size() const {
        return trees_.size();
    }

    /// Drops everything except the given terminals once the cache grows past
    /// max_size (memory valve for long sampling runs).
    void prune(const std::vector<int>& keep, size_t max_size) {
        if (trees_.size() <= max_size)
            return;
        std::unordered_map<int, ShortestPathTree> kept;
        for (int u : keep) {
            auto it = trees_.find(u);
            if (it != trees_.end())
                kept.emplace(u, std::move(it->second));
        }
        trees_ = std::move(kept);
    }

   private:
    const DecodingGraph* g_ = nullptr;
    std::unordered_map<int, ShortestPathTree> trees_;
};

inline PathCache weighted_distances(const DecodingGraph& g, const std::vector<int>& sources) {
    PathCache cache(g);
    cache.ensure(sources);
    return cache;
}

}  // namespace qsplit

#endif
