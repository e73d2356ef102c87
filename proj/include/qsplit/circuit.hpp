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

#ifndef QSPLIT_CIRCUIT_HPP
#define QSPLIT_CIRCUIT_HPP

#include "qsplit/lattice.hpp"

namespace qsplit {

enum class OpKind : uint8_t {
    prep_z,   // ancilla |0>
    prep_x,   // ancilla |+>
    cnot,     // q0 control, q1 target
    meas_z,
    meas_x,
    idle,
};

struct CircuitOp {
    OpKind kind;
    int q0 = -1;
    int q1 = -1;
    int stab = -1;  // compact stabilizer index for prep/meas ops
};

/// Syndrome readout circuit: six rounds per measurement cycle
/// (prepare, four CNOT rounds in N/W/E/S order, measure). Plaquette
/// stabilizers use data->ancilla CNOTs and a Z measurement; site stabilizers
/// use ancilla->data CNOTs and an X measurement. Both species share the CNOT
/// rounds; the N/W/E/S ordering is collision-free on the square lattice.
/// Truncated stabilizers skip the missing CNOTs and the ancilla idles.
struct ReadoutCircuit {
    SurfaceLattice lattice;
    int cycles = 0;
    static constexpr int rounds_per_cycle = 6;

    int num_data = 0;
    int num_plaq = 0;  // kept plaquettes == plaquette ancillas
    int num_site = 0;  // kept sites == site ancillas
    std::vector<int> data_qubit_of_edge;   // lattice edge id -> qubit (-1)
    std::vector<int> edge_of_data_qubit;   // qubit -> lattice edge id
    std::vector<int> plaq_index_of;        // lattice plaq id -> compact index (-1)
    std::vector<int> plaq_id_of;           // compact index -> lattice plaq id
    std::vector<int> site_index_of;
    std::vector<int> site_id_of;

    std::vector<std::vector<CircuitOp>> rounds;   // size cycles * 6
    std::vector<std::vector<int>> op_at;          // [qubit][round] -> op index or -1

    int num_qubits() const {
        return num_data + num_plaq + num_site;
    }
    int plaq_ancilla(int compact) const {
        return num_data + compact;
    }
    int site_ancilla(int compact) const {
        return num_data + num_plaq + compact;
    }
    int total_rounds() const {
        return cycles * rounds_per_cycle;
    }
    const CircuitOp& op(int round, int index) const {
        return rounds[size_t(round)][size_t(index)];
    }
};

inline ReadoutCircuit build_readout_circuit(const SurfaceLattice& lat, int t_cycles) {
    if (t_cycles < 1)
        throw std::invalid_argument("build_readout_circuit: need at least one cycle");
    ReadoutCircuit c;
    c.lattice = lat;
    c.cycles = t_cycles;

    c.data_qubit_of_edge.assign(size_t(lat.num_edges()), -1);
    for (int e = 0; e < lat.num_edges(); e++) {
        if (lat.edge_kept[size_t(e)]) {
            c.data_qubit_of_edge[size_t(e)] = c.num_data++;
            c.edge_of_data_qubit.push_back(e);
        }
    }
    c.plaq_index_of.assign(size_t(lat.num_plaquettes()), -1);
    for (int p = 0; p < lat.num_plaquettes(); p++) {
        if (lat.plaq_kept[size_t(p)]) {
            c.plaq_index_of[size_t(p)] = c.num_plaq++;
            c.plaq_id_of.push_back(p);
        }
    }
    c.site_index_of.assign(size_t(lat.num_sites()), -1);
    for (int s = 0; s < lat.num_sites(); s++) {
        if (lat.site_kept[size_t(s)]) {
            c.site_index_of[size_t(s)] = c.num_site++;
            c.site_id_of.push_back(s);
        }
    }

    // Direction-k edge of each stabilizer (N, W, E, S), -1 when absent.
    auto plaq_dir_edge = [&](int pid, int k) {
        int y = pid / lat.pcols, x = pid % lat.pcols;
        int e = -1;
        switch (k) {
            case 0: e = lat.hedge_id(x, y + 1); break;  // N
            case 1: e = lat.vedge_id(x, y); break;      // W
            case 2: e = lat.vedge_id(x + 1, y); break;  // E
            case 3: e = lat.hedge_id(x, y); break;      // S
        }
        return lat.edge_kept[size_t(e)] ? e : -1;
    };
    auto site_dir_edge = [&](int sid, int k) {
        int y = sid / lat.scols(), x = sid % lat.scols();
        int e = -1;
        switch (k) {
            case 0: e = y < lat.prows ? lat.vedge_id(x, y) : -1; break;      // N
            case 1: e = x > 0 ? lat.hedge_id(x - 1, y) : -1; break;          // W
            case 2: e = x < lat.pcols ? lat.hedge_id(x, y) : -1; break;      // E
            case 3: e = y > 0 ? lat.vedge_id(x, y - 1) : -1; break;          // S
        }
        return (e >= 0 && lat.edge_kept[size_t(e)]) ? e : -1;
    };

    c.rounds.assign(size_t(c.total_rounds()), {});
    c.op_at.assign(size_t(c.num_qubits()), std::vector<int>(size_t(c.total_rounds()), -1));
    auto push = [&](int round, CircuitOp op) {
        int idx = int(c.rounds[size_t(round)].size());
        c.rounds[size_t(round)].push_back(op);
        c.op_at[size_t(op.q0)][size_t(round)] = idx;
        if (op.q1 >= 0) {
            if (c.op_at[size_t(op.q1)][size_t(round)] != -1)
                throw ConstructionError("schedule collision");
            c.op_at[size_t(op.q1)][size_t(round)] = idx;
        }
    };

    for (int cyc = 0; cyc < t_cycles; cyc++) {
        int base = cyc * ReadoutCircuit::rounds_per_cycle;
        // Round 0: prepare all ancillas, data idles.
        for (int pi = 0; pi < c.num_plaq; pi++)
            push(base, {OpKind::prep_z, c.plaq_ancilla(pi), -1, pi});
        for (int si = 0; si < c.num_site; si++)
            push(base, {OpKind::prep_x, c.site_ancilla(si), -1, si});
        for (int d = 0; d < c.num_data; d++)
            push(base, {OpKind::idle, d, -1, -1});
        // Rounds 1..4: CNOT windows.
        for (int k = 0; k < 4; k++) {
            int round = base + 1 + k;
            for (int pi = 0; pi < c.num_plaq; pi++) {
                int e = plaq_dir_edge(c.plaq_id_of[size_t(pi)], k);
                if (e >= 0)
                    push(round, {OpKind::cnot, c.data_qubit_of_edge[size_t(e)], c.plaq_ancilla(pi), pi});
                else
                    push(round, {OpKind::idle, c.plaq_ancilla(pi), -1, -1});
            }
            for (int si = 0; si < c.num_site; si++) {
                int e = site_dir_edge(c.site_id_of[size_t(si)], k);
                if (e >= 0)
                    push(round, {OpKind::cnot, c.site_ancilla(si), c.data_qubit_of_edge[size_t(e)], si});
                else
                    push(round, {OpKind::idle, c.site_ancilla(si), -1, -1});
            }
            for (int d = 0; d < c.num_data; d++)
                if (c.op_at[size_t(d)][size_t(round)] == -1)
                    push(round, {OpKind::idle, d, -1, -1});
        }
        // Round 5: measure all ancillas, data idles.
        for (int pi = 0; pi < c.num_plaq; pi++)
            push(base + 5, {OpKind::meas_z, c.plaq_ancilla(pi), -1, pi});
        for (int si = 0; si < c.num_site; si++)
            push(base + 5, {OpKind::meas_x, c.site_ancilla(si), -1, si});
        for (int d = 0; d < c.num_data; d++)
            push(base + 5, {OpKind::idle, d, -1, -1});
    }
    return c;
}

/// A single fault: a Pauli injected right after one elementary operation, or
/// a flipped measurement outcome. `mode` indexes the operation's fault set:
/// prep: 1 mode; measurement: 1 mode (outcome flip); CNOT: 15 two-qubit
/// Paulis; idle: X, Y, Z.
struct ErrorEvent {
    int cycle = 0;  // 0-based
    int round = 0;  // 0..5 within the cycle
    int op_index = 0;
    uint8_t mode = 0;
    double prob_coeff = 0;  // probability = prob_coeff * p
};

struct PropagationResult {
    // Detector flips (stabilizer compact index, layer) with layers 0..t; the
    // layer-t detectors compare the last noisy round against a perfect final
    // readout and layer 0 against the fiducial initial state.
    std::vector<std::pair<int, int>> bit_detectors;    // plaquette stabilizers
    std::vector<std::pair<int, int>> phase_detectors;  // site stabilizers
    std::vector<int> bit_data_error;                   // lattice edge ids with a residual X
    std::vector<int> phase_data_error;                 // lattice edge ids with a residual Z
};

namespace detail {

struct PauliFrame {
    std::vector<uint8_t> fx, fz;
    std::vector<int> touched;

    explicit PauliFrame(int n) : fx(size_t(n), 0), fz(size_t(n), 0) {}
    void mark(int q) {
        touched.push_back(q);
    }
    void apply_x(int q) {
        fx[size_t(q)] ^= 1;
        mark(q);
    }
    void apply_z(int q) {
        fz[size_t(q)] ^= 1;
        mark(q);
    }
    void clear(int q) {
        fx[size_t(q)] = fz[size_t(q)] = 0;
    }
};

}  // namespace detail

/// Propagates faults through the ideal remainder of the circuit and collects
/// the relative syndrome and the residual data error for both species.
inline PropagationResult propagate_events(const ReadoutCircuit& c, const std::vector<ErrorEvent>& events) {
    detail::PauliFrame frame(c.num_qubits());
    // (stab, cycle) measurement flips, sparse.
    std::vector<std::pair<int, int>> plaq_flips, site_flips;

    int first_round = c.total_rounds();
    std::vector<std::vector<const ErrorEvent*>> by_round(size_t(c.total_rounds()));
    for (const auto& ev : events) {
        int r = ev.cycle * ReadoutCircuit::rounds_per_cycle + ev.round;
        by_round[size_t(r)].push_back(&ev);
        first_round = std::min(first_round, r);
    }

    auto inject = [&](const ErrorEvent& ev) {
        const CircuitOp& op = c.op(ev.cycle * ReadoutCircuit::rounds_per_cycle + ev.round, ev.op_index);
        switch (op.kind) {
            case OpKind::prep_z:
                frame.apply_x(op.q0);
                break;
            case OpKind::prep_x:
                frame.apply_z(op.q0);
                break;
            case OpKind::meas_z:
                plaq_flips.push_back({op.stab, ev.cycle});
                break;
            case OpKind::meas_x:
                site_flips.push_back({op.stab, ev.cycle});
                break;
            case OpKind::cnot: {
                int m = ev.mode + 1;  // 1..15, skipping the identity
                int p0 = m / 4, p1 = m % 4;  // 0:I 1:X 2:Y 3:Z on (control, target)
                if (p0 == 1 || p0 == 2)
                    frame.apply_x(op.q0);
                if (p0 == 2 || p0 == 3)
                    frame.apply_z(op.q0);
                if (p1 == 1 || p1 == 2)
                    frame.apply_x(op.q1);
                if (p1 == 2 || p1 == 3)
                    frame.apply_z(op.q1);
                break;
            }
            case OpKind::idle: {
                int m = ev.mode + 1;  // 1:X 2:Y 3:Z
                if (m == 1 || m == 2)
                    frame.apply_x(op.q0);
                if (m == 2 || m == 3)
                    frame.apply_z(op.q0);
                break;
            }
        }
    };

    // Process rounds; faults inject after the round's ideal operations.
    std::vector<int> active;
    for (int round = first_round; round < c.total_rounds(); round++) {
        if (round > first_round) {
            // Apply this round's ideal ops to the current frame, visiting each
            // op at most once via the touched qubits.
            active.clear();
            for (int q : frame.touched)
                if (frame.fx[size_t(q)] || frame.fz[size_t(q)])
                    active.push_back(q);
            std::sort(active.begin(), active.end());
            active.erase(std::unique(active.begin(), active.end()), active.end());
            std::vector<int> ops;
            for (int q : active) {
                int idx = c.op_at[size_t(q)][size_t(round)];
                if (idx >= 0)
                    ops.push_back(idx);
            }
            std::sort(ops.begin(), ops.end());
            ops.erase(std::unique(ops.begin(), ops.end()), ops.end());
            for (int idx : ops) {
                const CircuitOp& op = c.rounds[size_t(round)][size_t(idx)];
                switch (op.kind) {
                    case OpKind::cnot:
                        if (frame.fx[size_t(op.q0)]) {
                            frame.fx[size_t(op.q1)] ^= 1;
                            frame.mark(op.q1);
                        }
                        if (frame.fz[size_t(op.q1)]) {
                            frame.fz[size_t(op.q0)] ^= 1;
                            frame.mark(op.q0);
                        }
                        break;
                    case OpKind::meas_z:
                        if (frame.fx[size_t(op.q0)])
                            plaq_flips.push_back({op.stab, round / ReadoutCircuit::rounds_per_cycle});
                        break;
                    case OpKind::meas_x:
                        if (frame.fz[size_t(op.q0)])
                            site_flips.push_back({op.stab, round / ReadoutCircuit::rounds_per_cycle});
                        break;
                    case OpKind::prep_z:
                    case OpKind::prep_x:
                        frame.clear(op.q0);
                        break;
                    case OpKind::idle:
                        break;
                }
            }
        }
        for (const ErrorEvent* ev : by_round[size_t(round)])
            inject(*ev);
    }

    // Residual data errors.
    PropagationResult out;
    std::vector<int> data_x, data_z;
    {
        std::vector<int> seen = frame.touched;
        std::sort(seen.begin(), seen.end());
        seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
        for (int q : seen) {
            if (q >= c.num_data)
                continue;
            if (frame.fx[size_t(q)])
                data_x.push_back(c.edge_of_data_qubit[size_t(q)]);
            if (frame.fz[size_t(q)])
                data_z.push_back(c.edge_of_data_qubit[size_t(q)]);
        }
    }
    out.bit_data_error = data_x;
    out.phase_data_error = data_z;

    // Final perfect readout: flips of the true stabilizer values.
    const auto& lat = c.lattice;
    std::vector<int> plaq_acc, site_acc;
    for (int e : data_x)
        for (int p : lat.edge_plaquettes(e))
            plaq_acc.push_back(c.plaq_index_of[size_t(p)]);
    for (int e : data_z) {
        auto [a, b] = lat.edge_sites(e);
        site_acc.push_back(c.site_index_of[size_t(a)]);
        site_acc.push_back(c.site_index_of[size_t(b)]);
    }

    // Assemble detector flips per stabilizer: syndrome flip series over cycles
    // 1..t plus the perfect final extraction, differentiated in time.
    auto detectors = [&](std::vector<std::pair<int, int>>& meas, std::vector<int>& sigma_acc,
                         std::vector<std::pair<int, int>>& out_det) {
        std::sort(meas.begin(), meas.end());
        std::sort(sigma_acc.begin(), sigma_acc.end());
        // Collect involved stabilizers.
        std::vector<int> stabs;
        for (auto& [s, cyc] : meas)
            stabs.push_back(s);
        for (int s : sigma_acc)
            stabs.push_back(s);
        std::sort(stabs.begin(), stabs.end());
        stabs.erase(std::unique(stabs.begin(), stabs.end()), stabs.end());
        for (int s : stabs) {
            // s_flip[c] for c in 1..t, parity of recorded flips.
            std::vector<uint8_t> flip(size_t(c.cycles + 2), 0);
            for (auto& [st, cyc] : meas)
                if (st == s)
                    flip[size_t(cyc + 1)] ^= 1;
            // Final perfect extraction at index t+1: parity of sigma flips.
            int sigma_par = 0;
            for (int st : sigma_acc)
                if (st == s)
                    sigma_par ^= 1;
            flip[size_t(c.cycles + 1)] = uint8_t(sigma_par);
            // D(s, tau) = s(tau+1) xor s(tau), tau = 0..t.
            for (int tau = 0; tau <= c.cycles; tau++)
                if (flip[size_t(tau + 1)] ^ flip[size_t(tau)])
                    out_det.push_back({s, tau});
        }
        std::sort(out_det.begin(), out_det.end());
    };
    detectors(plaq_flips, plaq_acc, out.bit_detectors);
    detectors(site_flips, site_acc, out.phase_detectors);
    return out;
}

inline PropagationResult propagate_event(const ReadoutCircuit& c, const ErrorEvent& event) {
    return propagate_events(c, {event});
}

/// All fault modes of the circuit, in deterministic order.
inline std::vector<ErrorEvent> enumerate_events(const ReadoutCircuit& c) {
    std::vector<ErrorEvent> out;
    for (int cyc = 0; cyc < c.cycles; cyc++) {
        for (int rd = 0; rd < ReadoutCircuit::rounds_per_cycle; rd++) {
            int round = cyc * ReadoutCircuit::rounds_per_cycle + rd;
            for (int idx = 0; idx < int(c.rounds[size_t(round)].size()); idx++) {
                const CircuitOp& op = c.rounds[size_t(round)][size_t(idx)];
                int modes = 0;
                double coeff = 0;
                switch (op.kind) {
                    case OpKind::prep_z:
                    case OpKind::prep_x:
                    case OpKind::meas_z:
                    case OpKind::meas_x:
                        modes = 1;
                        coeff = 1.0;
                        break;
                    case OpKind::cnot:
                        modes = 15;
                        coeff = 1.0 / 15.0;
                        break;
                    case OpKind::idle:
                        modes = 3;
                        coeff = 1.0 / 3.0;
                        break;
                }
                for (int m = 0; m < modes; m++)
                    out.push_back({cyc, rd, idx, uint8_t(m), coeff});
            }
        }
    }
    return out;
}

}  // namespace qsplit

#endif
