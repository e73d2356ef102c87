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

#ifndef QSPLIT_DECODER_HPP
#define QSPLIT_DECODER_HPP

#include "qsplit/dijkstra.hpp"
#include "qsplit/matching.hpp"

namespace qsplit {

/// Modified edge weight for the boundary-aware reduction:
/// η(u,v) = D(u,T) + D(v,T) - D(u,v).
inline double eta_weight(PathCache& cache, int u, int v) {
    return cache.boundary_distance(u) + cache.boundary_distance(v) - cache.distance(u, v);
}

inline MatchingInstance build_problem1_instance(PathCache& cache, const std::vector<int>& syndrome) {
    MatchingInstance inst;
    inst.n = int(syndrome.size());
    inst.mode = MatchingMode::minimize_perfect;
    inst.labels = syndrome;
    for (int a = 0; a < inst.n; a++) {
        for (int b = a + 1; b < inst.n; b++) {
            double d = cache.distance(syndrome[size_t(a)], syndrome[size_t(b)]);
            if (d < kInf)
                inst.edges.push_back({a, b, d});
        }
    }
    return inst;
}

inline MatchingInstance build_problem2_instance(PathCache& cache, const std::vector<int>& syndrome) {
    // Vertices that cannot reach the boundary must be matched; a large constant
    // stands in for their infinite boundary distance so the maximum weight
    // matching is forced to pair them while leaving the finite part of the
    // objective untouched.
    MatchingInstance inst;
    inst.n = int(syndrome.size());
    inst.mode = MatchingMode::maximize_nonperfect;
    inst.labels = syndrome;
    double big = 1.0;
    for (int u : syndrome) {
        double d = cache.boundary_distance(u);
        if (d < kInf)
            big += d;
    }
    for (int a = 0; a < inst.n; a++)
        for (int b = a + 1; b < inst.n; b++) {
            double duv = cache.distance(syndrome[size_t(a)], syndrome[size_t(b)]);
            if (duv < kInf)
                big += duv;
        }
    auto cap = [&](double d) { return d == kInf ? big : d; };
    for (int a = 0; a < inst.n; a++)
        for (int b = a + 1; b < inst.n; b++) {
            double duv = cache.distance(syndrome[size_t(a)], syndrome[size_t(b)]);
            if (duv == kInf)
                continue;
            double du = cap(cache.boundary_distance(syndrome[size_t(a)]));
            double dv = cap(cache.boundary_distance(syndrome[size_t(b)]));
            inst.edges.push_back({a, b, du + dv - duv});
        }
    return inst;
}

/// Minimum weight chain with ∂E = S (boundary set treated as empty).
inline EdgeSet solve_problem1(const DecodingGraph& g, const std::vector<int>& syndrome,
                              PathCache* cache = nullptr) {
    if (syndrome.size() % 2 != 0)
        throw InfeasibleSyndromeError("odd syndrome with an empty boundary set");
    EdgeSet chain(g.edges.size());
    if (syndrome.empty())
        return chain;
    PathCache local(g);
    PathCache& c = cache ? *cache : local;
    c.ensure(syndrome);
    MatchingInstance inst = build_problem1_instance(c, syndrome);
    MatchingResult m = exact_matching(inst);
    if (!m.unmatched.empty())
        throw InfeasibleSyndromeError("syndrome vertices are disconnected");
    for (auto [a, b] : m.pairs)
        c.append_path(syndrome[size_t(a)], syndrome[size_t(b)], chain);
    return chain;
}

/// Minimum weight chain with (∂E)\T = S.
inline EdgeSet solve_problem2(const DecodingGraph& g, const std::vector<int>& syndrome,
                              PathCache* cache = nullptr) {
    for (int u : syndrome)
        if (g.is_boundary(u))
            throw std::invalid_argument("syndrome vertex inside the boundary set");
    EdgeSet chain(g.edges.size());
    if (syndrome.empty())
        return chain;
    PathCache local(g);
    PathCache& c = cache ? *cache : local;
    c.ensure(syndrome);
    MatchingInstance inst = build_problem2_instance(c, syndrome);
    MatchingResult m = exact_matching(inst);
    for (auto [a, b] : m.pairs) {
        if (c.distance(syndrome[size_t(a)], syndrome[size_t(b)]) == kInf)
            throw InfeasibleSyndromeError("matched pair is disconnected");
        c.append_path(syndrome[size_t(a)], syndrome[size_t(b)], chain);
    }
    for (int a : m.unmatched) {
        if (c.boundary_distance(syndrome[size_t(a)]) == kInf)
            throw InfeasibleSyndromeError("syndrome vertex cannot reach the boundary");
        c.append_boundary_path(syndrome[size_t(a)], chain);
    }
    return chain;
}

/// Most likely recovery chain for the given syndrome. Dispatches on whether
/// the graph has a boundary set; deterministic for a fixed graph + syndrome.
inline EdgeSet decode(const DecodingGraph& g, const std::vector<int>& syndrome,
                      PathCache* cache = nullptr) {
    if (g.has_boundary())
        return solve_problem2(g, syndrome, cache);
    return solve_problem1(g, syndrome, cache);
}

}  // namespace qsplit

#endif
