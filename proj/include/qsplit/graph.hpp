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

#ifndef QSPLIT_GRAPH_HPP
#define QSPLIT_GRAPH_HPP

#include <iostream>
#include <sstream>

#include "qsplit/common.hpp"

namespace qsplit {

struct GraphEdge {
    int u = -1;
    int v = -1;
    double weight = 1.0;
    double rate = -1.0;  // error rate p(e) in (0, 1/2], or -1 when unset

    bool operator==(const GraphEdge&) const = default;
};

inline double weight_from_rate(double p) {
    return std::log((1.0 - p) / p);
}

/// Decoding graph: vertices split into syndrome-bearing vertices and the
/// boundary set T (every T vertex has exactly one incident edge). Edges carry
/// nonnegative weights and optional error rates with
/// weight = ln((1-p)/p). The logical chain decides the overlap parity that
/// classifies a chain as a logical failure; the seed chain is a canonical
/// uncorrectable chain used to start samplers.
struct DecodingGraph {
    int num_vertices = 0;
    std::vector<GraphEdge> edges;
    std::vector<uint8_t> boundary;  // size num_vertices, 1 for T vertices
    EdgeSet logical_chain;
    EdgeSet seed_chain;
    // adjacency[v] = (neighbor, edge id), in increasing edge id order
    std::vector<std::vector<std::pair<int, int>>> adjacency;

    int num_edges() const {
        return int(edges.size());
    }
    int num_boundary() const {
        int c = 0;
        for (uint8_t b : boundary)
            c += b;
        return c;
    }
    bool has_boundary() const {
        for (uint8_t b : boundary)
            if (b)
                return true;
        return false;
    }
    bool is_boundary(int v) const {
        return boundary[size_t(v)] != 0;
    }

    void finalize() {
        if (int(boundary.size()) != num_vertices)
            boundary.assign(size_t(num_vertices), 0);
        if (logical_chain.size() != edges.size())
            logical_chain = EdgeSet(edges.size());
        if (seed_chain.size() != edges.size())
            seed_chain = EdgeSet(edges.size());
        adjacency.assign(size_t(num_vertices), {});
        for (int k = 0; k < num_edges(); k++) {
            const auto& e = edges[size_t(k)];
            if (e.u < 0 || e.u >= num_vertices || e.v < 0 || e.v >= num_vertices || e.u == e.v)
                throw ConstructionError("edge " + std::to_string(k) + " has invalid endpoints");
            if (!(e.weight >= 0))
                throw ConstructionError("edge " + std::to_string(k) + " has negative weight");
            if (e.rate > 0 && e.rate > 0.5)
                throw ConstructionError("edge " + std::to_string(k) + " has rate > 1/2");
            adjacency[size_t(e.u)].push_back({e.v, k});
            adjacency[size_t(e.v)].push_back({e.u, k});
        }
        for (int v = 0; v < num_vertices; v++) {
            if (boundary[size_t(v)] && adjacency[size_t(v)].size() != 1)
                throw ConstructionError("boundary vertex " + std::to_string(v) +
                                        " must have exactly one incident edge");
        }
    }

    void require_logical() const {
        if (logical_chain.empty())
            throw ConstructionError("decoding graph has an empty logical chain");
    }

    static DecodingGraph from_edges(int num_vertices, std::vector<GraphEdge> edges,
                                    std::vector<int> boundary_vertices = {},
                                    std::vector<int> logical_edges = {}) {
        DecodingGraph g;
        g.num_vertices = num_vertices;
        g.edges = std::move(edges);
        g.boundary.assign(size_t(num_vertices), 0);
        for (int v : boundary_vertices)
            g.boundary[size_t(v)] = 1;
        g.logical_chain = EdgeSet::from_indices(g.edges.size(), logical_edges);
        g.seed_chain = EdgeSet(g.edges.size());
        g.finalize();
        return g;
    }
};

/// ∂E: vertices with an odd number of incident chain edges.
inline std::vector<int> boundary_of(const DecodingGraph& g, const EdgeSet& chain) {
    std::vector<uint8_t> odd(size_t(g.num_vertices), 0);
    chain.for_each([&](int k) {
        odd[size_t(g.edges[size_t(k)].u)] ^= 1;
        odd[size_t(g.edges[size_t(k)].v)] ^= 1;
    });
    std::vector<int> out;
    for (int v = 0; v < g.num_vertices; v++)
        if (odd[size_t(v)])
            out.push_back(v);
    return out;
}

/// Syndrome (∂E)\T, sorted.
inline std::vector<int> syndrome_of(const DecodingGraph& g, const EdgeSet& chain) {
    std::vector<int> out;
    for (int v : boundary_of(g, chain))
        if (!g.is_boundary(v))
            out.push_back(v);
    return out;
}

/// ε(E) = |E ∩ Γ| mod 2.
inline int parity(const DecodingGraph& g, const EdgeSet& chain) {
    return chain.overlap_parity(g.logical_chain);
}

inline double chain_weight(const DecodingGraph& g, const EdgeSet& chain) {
    double w = 0;
    chain.for_each([&](int k) { w += g.edges[size_t(k)].weight; });
    return w;
}

// ---------------------------------------------------------------------------
// Line-oriented text serialization.
//
//   qsplit-graph 1
//   <V> <E> <T>
//   <T vertex ids on one line (may be empty)>
//   <u> <v> <weight> <rate> <gamma flag> [<k> <proj ids...>]
//
// The optional per-edge tail carries the 2D projection used by circuit-level
// graphs. The seed chain is stored as an extra line "seed <ids...>".
// ---------------------------------------------------------------------------

inline void serialize_graph(const DecodingGraph& g, std::ostream& out,
                            const std::vector<std::vector<int>>* projection = nullptr) {
    out << "qsplit-graph 1\n";
    out << g.num_vertices << " " << g.num_edges() << " " << g.num_boundary() << "\n";
    bool first = true;
    for (int v = 0; v < g.num_vertices; v++) {
        if (g.is_boundary(v)) {
            if (!first)
                out << " ";
            out << v;
            first = false;
        }
    }
    out << "\n";
    out.precision(17);
    for (int k = 0; k < g.num_edges(); k++) {
        const auto& e = g.edges[size_t(k)];
        out << e.u << " " << e.v << " " << e.weight << " " << e.rate << " "
            << (g.logical_chain.contains(size_t(k)) ? 1 : 0);
        if (projection) {
            const auto& pr = (*projection)[size_t(k)];
            out << " " << pr.size();
            for (int id : pr)
                out << " " << id;
        }
        out << "\n";
    }
    out << "seed";
    for (int k : g.seed_chain.to_indices())
        out << " " << k;
    out << "\n";
}

inline DecodingGraph parse_graph(std::istream& in, std::vector<std::vector<int>>* projection = nullptr) {
    std::string magic;
    int version = 0;
    if (!(in >> magic >> version) || magic != "qsplit-graph" || version != 1)
        throw ConstructionError("not a qsplit graph file");
    int nv = 0, ne = 0, nt = 0;
    if (!(in >> nv >> ne >> nt))
        throw ConstructionError("bad graph header");
    DecodingGraph g;
    g.num_vertices = nv;
    g.boundary.assign(size_t(nv), 0);
    for (int i = 0; i < nt; i++) {
        int v;
        in >> v;
        g.boundary[size_t(v)] = 1;
    }
    std::vector<int> logical;
    if (projection)
        projection->assign(size_t(ne), {});
    for (int k = 0; k < ne; k++) {
        GraphEdge e;
        int gamma = 0;
        if (!(in >> e.u >> e.v >> e.weight >> e.rate >> gamma))
            throw ConstructionError("bad edge line " + std::to_string(k));
        if (gamma)
            logical.push_back(k);
        if (projection) {
            int c = 0;
            in >> c;
            (*projection)[size_t(k)].resize(size_t(c));
            for (int i = 0; i < c; i++)
                in >> (*projection)[size_t(k)][size_t(i)];
        }
        g.edges.push_back(e);
    }
    g.logical_chain = EdgeSet::from_indices(g.edges.size(), logical);
    g.seed_chain = EdgeSet(g.edges.size());
    std::string tag;
    if (in >> tag && tag == "seed") {
        std::string rest;
        std::getline(in, rest);
        std::istringstream ss(rest);
        int k;
        while (ss >> k)
            g.seed_chain.add(size_t(k));
    }
    g.finalize();
    return g;
}

}  // namespace qsplit

#endif
