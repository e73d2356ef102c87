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

#ifndef QSPLIT_LATTICE_HPP
#define QSPLIT_LATTICE_HPP

#include <array>

#include "qsplit/graph.hpp"

namespace qsplit {

enum class ErrorKind {
    phase,  // loop-like logical errors, primal decoding graph, T = ∅
    bit,    // path-like logical errors, dual decoding graph with hanging edges
};

inline const char* to_string(ErrorKind k) {
    return k == ErrorKind::phase ? "phase" : "bit";
}

struct DefectBlock {
    int x = 0;  // anchor plaquette column
    int y = 0;  // anchor plaquette row
    int size = 0;
};

/// Square lattice of plaquettes with square defect blocks removed.
///
/// Plaquette (x,y) spans sites (x..x+1, y..y+1). Horizontal edge h(x,y) joins
/// sites (x,y)-(x+1,y) and borders plaquettes (x,y-1) and (x,y); vertical edge
/// v(x,y) joins (x,y)-(x,y+1) and borders (x-1,y) and (x,y). A plaquette in a
/// defect block is removed; an edge is kept iff it borders at least one kept
/// plaquette; a site is kept iff it has a kept incident edge. All ids are
/// row-major, which fixes a deterministic iteration order.
struct SurfaceLattice {
    int pcols = 0;
    int prows = 0;
    int defect_size = 0;
    int separation = 0;
    int buffer = 0;
    std::vector<DefectBlock> defects;
    std::vector<uint8_t> plaq_kept;
    std::vector<uint8_t> edge_kept;
    std::vector<uint8_t> site_kept;
    std::vector<std::string> warnings;

    int scols() const {
        return pcols + 1;
    }
    int srows() const {
        return prows + 1;
    }
    int num_plaquettes() const {
        return pcols * prows;
    }
    int num_sites() const {
        return scols() * srows();
    }
    int num_hedges() const {
        return pcols * srows();
    }
    int num_vedges() const {
        return scols() * prows;
    }
    int num_edges() const {
        return num_hedges() + num_vedges();
    }

    int site_id(int x, int y) const {
        return y * scols() + x;
    }
    int plaq_id(int x, int y) const {
        return y * pcols + x;
    }
    int hedge_id(int x, int y) const {
        return y * pcols + x;
    }
    int vedge_id(int x, int y) const {
        return num_hedges() + y * scols() + x;
    }
    bool is_hedge(int e) const {
        return e < num_hedges();
    }

    std::pair<int, int> edge_sites(int e) const {
        if (is_hedge(e)) {
            int y = e / pcols, x = e % pcols;
            return {site_id(x, y), site_id(x + 1, y)};
        }
        int r = e - num_hedges();
        int y = r / scols(), x = r % scols();
        return {site_id(x, y), site_id(x, y + 1)};
    }

    /// Kept plaquettes bordering edge e (0, 1, or 2 entries).
    std::vector<int> edge_plaquettes(int e) const {
        std::vector<int> out;
        auto add = [&](int x, int y) {
            if (x >= 0 && x < pcols && y >= 0 && y < prows && plaq_kept[size_t(plaq_id(x, y))])
                out.push_back(plaq_id(x, y));
        };
        if (is_hedge(e)) {
            int y = e / pcols, x = e % pcols;
            add(x, y - 1);
            add(x, y);
        } else {
            int r = e - num_hedges();
            int y = r / scols(), x = r % scols();
            add(x - 1, y);
            add(x, y);
        }
        return out;
    }

    /// Kept edges incident to site s, in id order.
    std::vector<int> site_edges(int s) const {
        int y = s / scols(), x = s % scols();
        std::vector<int> out;
        auto add = [&](int e) {
            if (edge_kept[size_t(e)])
                out.push_back(e);
        };
        if (x > 0)
            add(hedge_id(x - 1, y));
        if (x < pcols)
            add(hedge_id(x, y));
        if (y > 0)
            add(vedge_id(x, y - 1));
        if (y < prows)
            add(vedge_id(x, y));
        std::sort(out.begin(), out.end());
        return out;
    }

    /// The four boundary edges of plaquette (x,y).
    std::array<int, 4> plaquette_edges(int x, int y) const {
        return {hedge_id(x, y), hedge_id(x, y + 1), vedge_id(x, y), vedge_id(x + 1, y)};
    }

    int num_kept_plaquettes() const {
        int c = 0;
        for (uint8_t k : plaq_kept)
            c += k;
        return c;
    }
    int num_kept_edges() const {
        int c = 0;
        for (uint8_t k : edge_kept)
            c += k;
        return c;
    }
    int num_kept_sites() const {
        int c = 0;
        for (uint8_t k : site_kept)
            c += k;
        return c;
    }

    /// Perimeter edges of a defect block (4r of them), in id order.
    std::vector<int> defect_perimeter(const DefectBlock& d) const {
        std::vector<int> out;
        for (int x = d.x; x < d.x + d.size; x++) {
            out.push_back(hedge_id(x, d.y));
            out.push_back(hedge_id(x, d.y + d.size));
        }
        for (int y = d.y; y < d.y + d.size; y++) {
            out.push_back(vedge_id(d.x, y));
            out.push_back(vedge_id(d.x + d.size, y));
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    /// Vertical edges crossed by the canonical horizontal dual path along the
    /// defects' top row: defect-to-boundary for one defect, defect-to-defect
    /// for two.
    std::vector<int> dual_path_edges() const {
        std::vector<int> out;
        int y = defects[0].y;
        if (defects.size() == 1) {
            for (int x = 0; x <= defects[0].x; x++)
                out.push_back(vedge_id(x, y));
        } else {
            for (int x = defects[0].x + defects[0].size; x <= defects[1].x; x++)
                out.push_back(vedge_id(x, y));
        }
        return out;
    }
};

inline SurfaceLattice build_lattice(int r, int s, int b, int n_defects) {
    if (r < 1 || s < 1 || b < 1)
        throw std::invalid_argument("build_lattice: r, s, b must be >= 1");
    if (n_defects != 1 && n_defects != 2)
        throw std::invalid_argument("build_lattice: n_defects must be 1 or 2");
    if (b < 2)
        throw ConstructionError("build_lattice: defect touches the external boundary (b < 2)");
    if (n_defects == 2 && s < 2)
        throw ConstructionError("build_lattice: defects touch each other (s < 2)");

    SurfaceLattice lat;
    lat.defect_size = r;
    lat.separation = s;
    lat.buffer = b;
    lat.prows = r + 2 * (b - 1);
    lat.pcols = n_defects == 2 ? 2 * b + 2 * r + s - 3 : r + 2 * (b - 1);
    if (r < 2)
        lat.warnings.push_back("defect size r < 2 may cause finite-size artifacts");

    lat.defects.push_back({b - 1, b - 1, r});
    if (n_defects == 2)
        lat.defects.push_back({b - 1 + r + s - 1, b - 1, r});

    lat.plaq_kept.assign(size_t(lat.num_plaquettes()), 1);
    for (const auto& d : lat.defects)
        for (int dy = 0; dy < d.size; dy++)
            for (int dx = 0; dx < d.size; dx++)
                lat.plaq_kept[size_t(lat.plaq_id(d.x + dx, d.y + dy))] = 0;

    lat.edge_kept.assign(size_t(lat.num_edges()), 0);
    for (int e = 0; e < lat.num_edges(); e++)
        lat.edge_kept[size_t(e)] = lat.edge_plaquettes(e).empty() ? 0 : 1;

    lat.site_kept.assign(size_t(lat.num_sites()), 0);
    for (int e = 0; e < lat.num_edges(); e++) {
        if (!lat.edge_kept[size_t(e)])
            continue;
        auto [a, c] = lat.edge_sites(e);
        lat.site_kept[size_t(a)] = 1;
        lat.site_kept[size_t(c)] = 1;
    }
    return lat;
}

/// A decoding graph plus the maps back to lattice cells.
struct BuiltGraph {
    DecodingGraph graph;
    std::vector<int> edge_source;        // lattice edge id per graph edge
    std::vector<int> vertex_cell;        // lattice site/plaquette id, -1 for T vertices
    std::vector<int> graph_edge_of;      // lattice edge id -> graph edge id (-1 if removed)
    std::vector<int> vertex_of_cell;     // lattice cell id -> graph vertex (-1)
};

inline BuiltGraph build_decoding_graph(const SurfaceLattice& lat, ErrorKind kind) {
    BuiltGraph out;
    DecodingGraph& g = out.graph;
    out.graph_edge_of.assign(size_t(lat.num_edges()), -1);

    if (kind == ErrorKind::phase) {
        out.vertex_of_cell.assign(size_t(lat.num_sites()), -1);
        for (int sid = 0; sid < lat.num_sites(); sid++) {
            if (lat.site_kept[size_t(sid)]) {
                out.vertex_of_cell[size_t(sid)] = g.num_vertices++;
                out.vertex_cell.push_back(sid);
            }
        }
        for (int e = 0; e < lat.num_edges(); e++) {
            if (!lat.edge_kept[size_t(e)])
                continue;
            auto [a, c] = lat.edge_sites(e);
            out.graph_edge_of[size_t(e)] = g.num_edges();
            out.edge_source.push_back(e);
            g.edges.push_back({out.vertex_of_cell[size_t(a)], out.vertex_of_cell[size_t(c)], 1.0, -1.0});
        }
        g.boundary.assign(size_t(g.num_vertices), 0);
    } else {
        out.vertex_of_cell.assign(size_t(lat.num_plaquettes()), -1);
        for (int pid = 0; pid < lat.num_plaquettes(); pid++) {
            if (lat.plaq_kept[size_t(pid)]) {
                out.vertex_of_cell[size_t(pid)] = g.num_vertices++;
                out.vertex_cell.push_back(pid);
            }
        }
        std::vector<int> hanging;  // lattice edge ids needing a T vertex
        for (int e = 0; e < lat.num_edges(); e++) {
            if (!lat.edge_kept[size_t(e)])
                continue;
            if (lat.edge_plaquettes(e).size() == 1)
                hanging.push_back(e);
        }
        g.boundary.assign(size_t(g.num_vertices), 0);
        std::vector<int> t_vertex_of(size_t(lat.num_edges()), -1);
        for (int e : hanging) {
            t_vertex_of[size_t(e)] = g.num_vertices++;
            out.vertex_cell.push_back(-1);
            g.boundary.push_back(1);
        }
        for (int e = 0; e < lat.num_edges(); e++) {
            if (!lat.edge_kept[size_t(e)])
                continue;
            auto plqs = lat.edge_plaquettes(e);
            out.graph_edge_of[size_t(e)] = g.num_edges();
            out.edge_source.push_back(e);
            if (plqs.size() == 2) {
                g.edges.push_back(
                    {out.vertex_of_cell[size_t(plqs[0])], out.vertex_of_cell[size_t(plqs[1])], 1.0, -1.0});
            } else {
                g.edges.push_back({out.vertex_of_cell[size_t(plqs[0])], t_vertex_of[size_t(e)], 1.0, -1.0});
            }
        }
    }

    // Γ and the sampler's starting chain. Γ^X is the canonical dual path and
    // Γ^Z the perimeter loop of the left-most defect; the two swap roles
    // between the graph kinds.
    auto map_edges = [&](const std::vector<int>& lattice_edges) {
        EdgeSet set(g.edges.size());
        for (int e : lattice_edges) {
            int k = out.graph_edge_of[size_t(e)];
            if (k < 0)
                throw ConstructionError("logical chain uses a removed edge");
            set.add(size_t(k));
        }
        return set;
    };
    EdgeSet loop = map_edges(lat.defect_perimeter(lat.defects[0]));
    EdgeSet path = map_edges(lat.dual_path_edges());
    if (kind == ErrorKind::phase) {
        g.logical_chain = path;
        g.seed_chain = loop;
    } else {
        g.logical_chain = loop;
        g.seed_chain = path;
    }
    g.finalize();
    g.require_logical();
    return out;
}

}  // namespace qsplit

#endif
