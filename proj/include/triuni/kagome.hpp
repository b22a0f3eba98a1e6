#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "triuni/gates.hpp"
#include "triuni/tensor.hpp"

namespace triuni {

/*
 * 2+1-dimensional tri-unitary circuit on a kagome array.
 *
 * The circuit is the cubic-lattice tensor network with a gate at every
 * vertex of {x+y+z = k} and qubit worldlines running along the three
 * axes; time is t = x+y+z. Projected onto the spatial plane, the
 * worldline crossings of three consecutive slices tile a kagome array
 * whose sites split into three colors (slice phases); the state of
 * interest occupies one color at a time and two ancillas per system
 * qubit fill the others, exactly as a static-array embedding.
 *
 * System register: one qubit per worldline, 3*n1*n2 lines on an
 * n1 x n2 torus (n1*n2 lines per axis). Each layer k couples every
 * line exactly once, in triples (x-line, y-line, z-line) meeting at a
 * vertex. Because the physical swaps across each hexagon absorb the
 * gate's SWAP_13 core, the register feels S13 * U per vertex; with
 * U = SWAP_13 the register evolution is the identity and operators
 * ride their worldlines ballistically (the xi/eta/zeta rays).
 *
 * Leg order at a vertex: (1,2,3) = arrivals along (x,y,z). This is the
 * assignment under which SWAP-limit worldlines run straight.
 */
struct KagomeCircuit {
    int n1 = 0, n2 = 0;
    Gate3 gate = Gate3::Identity();
    Gate3 reg_gate = Gate3::Identity();  // SWAP_13 * gate

    int lines() const { return 3 * n1 * n2; }

    /// Canonical register index of a line. type 0/1/2 = lines along
    /// x/y/z, labelled by (y,z), (x,z), (x,y) respectively; any integer
    /// pair is reduced onto the torus.
    int line_index(int type, int a, int b) const;
    int line_type(int q) const { return q / (n1 * n2); }
    std::pair<int, int> line_label(int q) const;

    /// Gate triples (x-line, y-line, z-line) of layer k (k counts
    /// layers from 0; a Floquet cycle is three consecutive layers).
    std::vector<std::array<int, 3>> layer_gates(int k) const;

    /// Site reached by the content starting at phase-0 site q after n
    /// cycles (sites of the phase-0 family are labelled by the line
    /// occupying them at cycle 0).
    int ray_site(int q, int cycles) const;

    /// Unwrapped plane coordinates (oblique frame (x-y, y-z)) of the
    /// phase-0 position of line (type,a,b) at cycle n; used to check
    /// ray straightness.
    std::array<long, 2> plane_position(int type, int a, int b, int cycles) const;
};

/// Builds the circuit; rejects register sizes beyond the dense bound
/// and, unless allow_wrap, tori whose rays wrap after one cycle.
KagomeCircuit build_kagome(int n1, int n2, const Gate3& gate, bool allow_wrap = false);

void apply_layer(ChainState& reg, const KagomeCircuit& c, int k);
/// One Floquet cycle = layers 3n, 3n+1, 3n+2.
void floquet_cycle(ChainState& reg, const KagomeCircuit& c, int cycle_index);

/// Infinite-temperature two-point function between system sites:
/// a on the phase-0 site labelled by anchor_q at t = 0, b on the
/// phase-0 site labelled by site_q after `cycles` full cycles.
Complex correlator_2d(const KagomeCircuit& c, const QubitOp& a, int anchor_q, const QubitOp& b,
                      int site_q, int cycles);

struct Kagome2DEntry {
    int anchor_q = 0;
    int site_q = 0;
    int cycles = 0;
    Complex value{};
    bool on_ray = false;
};

/// Grid over all target sites for the three inequivalent anchors
/// (one per sublattice, cell (0,0)).
std::vector<Kagome2DEntry> kagome_correlation_grid(const KagomeCircuit& c, const QubitOp& a,
                                                   const QubitOp& b, int cycles);

/// Explicit static-array embedding with the 2N ancilla qubits
/// materialized (9*n1*n2 physical qubits; small tori only). Runs one
/// cycle on (system ⊗ |0...0>) basis states.
struct ExplicitCycleReport {
    double ancilla_return_deficit = 0.0;  // max over basis runs of 1 - fidelity
    Mat system_block;                     // induced map on the system register
};

ExplicitCycleReport explicit_cycle(const KagomeCircuit& c, int cycle_index);

/// March permutation on phase-0 sites over one cycle, as a matrix in
/// the register basis: content of site q moves to site ray_site(q, 1).
Mat march_permutation(const KagomeCircuit& c);

/// Register evolution of one cycle as a dense matrix.
Mat register_cycle(const KagomeCircuit& c, int cycle_index);

} // namespace triuni
