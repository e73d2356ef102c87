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

#ifndef QSPLIT_FAULTS_HPP
#define QSPLIT_FAULTS_HPP

#include <map>

#include "qsplit/circuit.hpp"
#include "qsplit/correctability.hpp"

namespace qsplit {

/// Map from decoding-graph edges to their fault classes: the events whose
/// relative syndrome matches the edge, the accumulated prior coefficient
/// (prior = coeff * p), and the 2D projection as lattice edge ids.
struct FaultDictionary {
    std::vector<double> prior_coeff;
    std::vector<std::vector<int>> events;      // indices into all_events
    std::vector<std::vector<int>> projection;  // lattice edge ids, sorted
    std::vector<ErrorEvent> all_events;
    std::vector<int> gamma_lattice;            // 2D logical chain, lattice edge ids
    int num_lattice_edges = 0;
    double coeff_sum = 0;                      // Σ_e prior_coeff (for the ladder rule)

    NoiseModel noise_at(double p) const {
        std::vector<double> rates;
        rates.reserve(prior_coeff.size());
        for (double cfe : prior_coeff)
            rates.push_back(cfe * p);
        return NoiseModel::from_rates(std::move(rates));
    }
};

struct CircuitGraph {
    DecodingGraph graph;
    FaultDictionary dict;
    std::vector<std::pair<int, int>> vertex_label;  // (stab compact index, layer); (-1,-1) for T
};

namespace detail {

/// Shortest unit-weight path between two stabilizer vertices of the 2D graph,
/// or from a vertex to the nearest boundary vertex (target = -1). BFS order
/// makes the choice deterministic.
inline std::vector<int> bfs_projection(const DecodingGraph& g2d, const std::vector<int>& edge_source,
                                       int from, int to) {
    std::vector<int> parent_edge(size_t(g2d.num_vertices), -1);
    std::vector<int> parent(size_t(g2d.num_vertices), -1);
    std::vector<uint8_t> seen(size_t(g2d.num_vertices), 0);
    std::vector<int> queue{from};
    seen[size_t(from)] = 1;
    int found = -1;
    for (size_t head = 0; head < queue.size() && found < 0; head++) {
        int u = queue[head];
        if ((to >= 0 && u == to) || (to < 0 && g2d.is_boundary(u))) {
            found = u;
            break;
        }
        for (auto [v, k] : g2d.adjacency[size_t(u)]) {
            if (seen[size_t(v)])
                continue;
            // Boundary vertices are dead ends except as the target itself.
            if (g2d.is_boundary(v) && to >= 0 && v != to)
                continue;
            seen[size_t(v)] = 1;
            parent[size_t(v)] = u;
            parent_edge[size_t(v)] = k;
            queue.push_back(v);
            if ((to >= 0 && v == to) || (to < 0 && g2d.is_boundary(v))) {
                found = v;
                break;
            }
        }
    }
    if (found < 0)
        throw ConstructionError("projection path not found");
    std::vector<int> out;
    for (int v = found; v != from; v = parent[size_t(v)])
        out.push_back(edge_source[size_t(parent_edge[size_t(v)])]);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace detail

/// Builds the circuit-level decoding graph: vertices are (stabilizer, layer)
/// detector locations, edges are single-fault equivalence classes with priors
/// summed over the class, hanging edges for single-detector classes (at most
/// one per vertex after merging), and the 3D logical chain from the odd
/// overlap of projections with the 2D logical chain.
inline CircuitGraph build_3d_decoding_graph(const SurfaceLattice& lat, int t_cycles, double p,
                                            ErrorKind kind) {
    if (!(p > 0 && p <= 0.1))
        throw std::invalid_argument("circuit error rate must lie in (0, 0.1]");
    ReadoutCircuit circuit = build_readout_circuit(lat, t_cycles);
    auto built2d = build_decoding_graph(lat, kind);

    bool bit = kind == ErrorKind::bit;
    int n_stab = bit ? circuit.num_plaq : circuit.num_site;
    int n_layers = t_cycles + 1;
    int n_core = n_stab * n_layers;
    auto vertex_of = [&](int stab, int layer) { return layer * n_stab + stab; };

    // 2D stabilizer vertex (for projections) from compact stabilizer index.
    auto stab_vertex_2d = [&](int stab) {
        int cell = bit ? circuit.plaq_id_of[size_t(stab)] : circuit.site_id_of[size_t(stab)];
        return built2d.vertex_of_cell[size_t(cell)];
    };

    CircuitGraph out;
    FaultDictionary& dict = out.dict;
    dict.num_lattice_edges = lat.num_edges();
    dict.all_events = enumerate_events(circuit);
    built2d.graph.logical_chain.for_each(
        [&](int k) { dict.gamma_lattice.push_back(built2d.edge_source[size_t(k)]); });
    std::sort(dict.gamma_lattice.begin(), dict.gamma_lattice.end());

    struct ClassAccum {
        double coeff = 0;
        std::vector<int> events;
    };
    std::map<std::pair<int, int>, ClassAccum> classes;  // (a, b) vertices, b = -1 for hanging
    for (size_t idx = 0; idx < dict.all_events.size(); idx++) {
        auto res = propagate_event(circuit, dict.all_events[idx]);
        const auto& det = bit ? res.bit_detectors : res.phase_detectors;
        if (det.size() > 2)
            throw ConstructionError("single fault produced more than two detectors");
        if (det.empty()) {
            // Residual error with no detectors must be logically trivial.
            const auto& data = bit ? res.bit_data_error : res.phase_data_error;
            int overlap = 0;
            for (int e : data)
                overlap ^= std::binary_search(dict.gamma_lattice.begin(), dict.gamma_lattice.end(), e);
            if (overlap)
                throw ConstructionError("undetectable logical fault");
            continue;
        }
        int a = vertex_of(det[0].first, det[0].second);
        int b = det.size() == 2 ? vertex_of(det[1].first, det[1].second) : -1;
        if (b >= 0 && b < a)
            std::swap(a, b);
        auto key = b < 0 ? std::pair<int, int>{a, -1} : std::pair<int, int>{a, b};
        auto& acc = classes[key];
        acc.coeff += dict.all_events[idx].prob_coeff;
        acc.events.push_back(int(idx));
    }

    DecodingGraph& g = out.graph;
    g.num_vertices = n_core;
    for (int layer = 0; layer < n_layers; layer++)
        for (int stab = 0; stab < n_stab; stab++)
            out.vertex_label.push_back({stab, layer});
    g.boundary.assign(size_t(n_core), 0);

    std::vector<GraphEdge> edges;
    for (const auto& [key, acc] : classes) {
        double rate = acc.coeff * p;
        if (!(rate > 0 && rate < 0.5))
            throw ConstructionError("edge prior outside (0, 1/2) at this error rate");
        int a = key.first;
        int b = key.second;
        if (b < 0) {
            b = g.num_vertices++;
            g.boundary.push_back(1);
            out.vertex_label.push_back({-1, -1});
        }
        edges.push_back({a, b, weight_from_rate(rate), rate});
        dict.prior_coeff.push_back(acc.coeff);
        dict.events.push_back(acc.events);
        // Projection: empty for time-like classes, else a deterministic
        // minimum path between the stabilizers (to the boundary for hanging
        // classes on the bit graph).
        std::vector<int> proj;
        int stab_a = key.first % n_stab;
        if (key.second < 0) {
            proj = detail::bfs_projection(built2d.graph, built2d.edge_source, stab_vertex_2d(stab_a), -1);
        } else {
            int stab_b = key.second % n_stab;
            if (stab_a != stab_b)
                proj = detail::bfs_projection(built2d.graph, built2d.edge_source, stab_vertex_2d(stab_a),
                                              stab_vertex_2d(stab_b));
        }
        dict.projection.push_back(proj);
        dict.coeff_sum += acc.coeff;
    }
    g.edges = std::move(edges);

    // Γ̂: edges whose projection has odd overlap with the 2D logical chain.
    g.logical_chain = EdgeSet(g.edges.size());
    for (size_t k = 0; k < g.edges.size(); k++) {
        int overlap = 0;
        for (int e : dict.projection[k])
            overlap ^= std::binary_search(dict.gamma_lattice.begin(), dict.gamma_lattice.end(), e);
        if (overlap)
            g.logical_chain.add(k);
    }

    // Starting chain: the 2D seed chain replayed at a fixed middle layer.
    g.seed_chain = EdgeSet(g.edges.size());
    {
        int tau = t_cycles / 2;
        std::map<std::pair<int, int>, int> edge_index;
        for (size_t k = 0; k < g.edges.size(); k++) {
            const auto& e = g.edges[k];
            if (g.boundary[size_t(e.v)])
                edge_index[{e.u, -1}] = int(k);
            else
                edge_index[{e.u, e.v}] = int(k);
        }
        built2d.graph.seed_chain.for_each([&](int k2d) {
            const auto& e2d = built2d.graph.edges[size_t(k2d)];
            bool hanging = built2d.graph.is_boundary(e2d.u) || built2d.graph.is_boundary(e2d.v);
            int u2d = built2d.graph.is_boundary(e2d.u) ? e2d.v : e2d.u;
            // Map the 2D stabilizer vertex back to its compact stabilizer index.
            int cell = built2d.vertex_cell[size_t(u2d)];
            int stab_u = bit ? circuit.plaq_index_of[size_t(cell)] : circuit.site_index_of[size_t(cell)];
            std::pair<int, int> key;
            if (hanging) {
                key = {vertex_of(stab_u, tau), -1};
            } else {
                int cell_v = built2d.vertex_cell[size_t(e2d.v == u2d ? e2d.u : e2d.v)];
                int stab_v =
                    bit ? circuit.plaq_index_of[size_t(cell_v)] : circuit.site_index_of[size_t(cell_v)];
                int a = vertex_of(stab_u, tau), b = vertex_of(stab_v, tau);
                if (b < a)
                    std::swap(a, b);
                key = {a, b};
            }
            auto it = edge_index.find(key);
            if (it == edge_index.end())
                throw ConstructionError("starting chain edge missing from the circuit graph");
            g.seed_chain.add(size_t(it->second));
        });
    }

    g.finalize();
    g.require_logical();
    if (is_correctable_decoder_specific(g, g.seed_chain))
        throw ConstructionError("circuit-graph starting chain is unexpectedly correctable");
    return out;
}

/// Π(E): XOR of the per-edge projections, as a set of lattice edge ids.
inline EdgeSet project(const FaultDictionary& dict, const EdgeSet& chain) {
    EdgeSet out{size_t(dict.num_lattice_edges)};
    chain.for_each([&](int k) {
        for (int e : dict.projection[size_t(k)])
            out.flip(size_t(e));
    });
    return out;
}

/// Correctability on the circuit graph: decode the relative syndrome and test
/// the parity of R ⊕ E against the 3D logical chain.
inline bool correctable_3d(const DecodingGraph& g, const EdgeSet& chain, PathCache* cache = nullptr) {
    return is_correctable_decoder_specific(g, chain, cache);
}

}  // namespace qsplit

#endif
