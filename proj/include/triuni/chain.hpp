#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "triuni/channels.hpp"
#include "triuni/gates.hpp"
#include "triuni/tensor.hpp"

namespace triuni {

/*
 * Triangular brickwork on a chain. The even half-layer places gates on
 * triplets (x, x+1, x+2) for x = 0, 4, 8, ...; the odd half-layer is
 * the same pattern shifted by two sites. One out of every four sites
 * idles per half-layer. Time t counts half-layers, the first applied
 * half-layer is the even one, and the maximal speed is two sites per
 * half-layer.
 *
 * Under this indexing the SWAP-limit movers live on even sites and the
 * odd sites are the non-movers hosting the static ray: sites 1 mod 4
 * sit under the middle leg of even half-layer gates, sites 3 mod 4
 * under the middle leg of odd half-layer gates.
 */
struct ChainCircuit {
    int L = 0;
    Boundary boundary = Boundary::Periodic;
    Gate3 gate = Gate3::Identity();
    /// Optional per-cell gates: key (parity, cell). parity 0 = even
    /// half-layer, cell k = gate anchored at x = 4k (+2 for parity 1).
    std::map<std::pair<int, int>, Gate3> overrides;

    ChainCircuit(int L_, Boundary b, Gate3 g) : L(L_), boundary(b), gate(std::move(g)) {
        if (L < 4) throw validation_error("ChainCircuit: need L >= 4");
        if (boundary == Boundary::Periodic && L % 4 != 0)
            throw validation_error("ChainCircuit: periodic boundaries need L multiple of 4");
    }

    const Gate3& gate_at(int parity, int cell) const;
    /// Site triplets covered by the given half-layer parity.
    std::vector<std::array<int, 3>> cells(int parity) const;
};

/// Parity (0 = even sublayer) of the k-th applied half-layer, k >= 1.
inline int half_layer_parity(int k) { return (k % 2 == 1) ? 0 : 1; }

void apply_half_layer(ChainState& state, const ChainCircuit& c, int parity);

/// op <- H† op H where H is the half-layer unitary.
void conjugate_half_layer(Mat& op, const ChainCircuit& c, int parity);

/// Dense 2^L x 2^L half-layer matrix (L <= 12).
Mat dense_half_layer(const ChainCircuit& c, int parity);

/// Dense evolution operator over the first t half-layers (L <= 12).
Mat evolution_operator(const ChainCircuit& c, int t);

/// Heisenberg evolution a(t) of a one-site operator over t half-layers
/// (dense, L <= 12).
Mat heisenberg_operator(const ChainCircuit& c, const QubitOp& a, int site, int t);

/// C(x,t) = 2^-L Tr(a_anchor(t) b_{anchor+x}); traceless unit-normalized
/// a, b. Enforces the wrap-free window 4t+1 <= L for periodic chains
/// unless allow_wrap.
Complex heisenberg_correlator(const ChainCircuit& c, const QubitOp& a, int anchor,
                              const QubitOp& b, int x, int t, bool allow_wrap = false);

struct GridEntry {
    int anchor = 0;  // site carrying a at t=0
    int x = 0;       // signed offset of b
    int t = 0;       // half-layers
    Complex value{};
    bool on_ray = false;  // x in {0, +2t, -2t}
};

struct CorrelationGrid {
    int L = 0;
    Boundary boundary = Boundary::Periodic;
    int t_max = 0;
    std::string a_label, b_label;
    std::uint64_t gate_hash = 0;
    std::uint64_t seed = 0;
    std::vector<GridEntry> entries;

    double max_offray_abs() const;
    double max_onray_abs() const;
};

/// Grid over all offsets in the wrap-free window, 1 <= t <= t_max, for
/// every anchor in the four-site unit cell.
CorrelationGrid correlation_grid(const ChainCircuit& c, const QubitOp& a, const QubitOp& b,
                                 int t_max, bool allow_wrap = false);

struct RayMatchEntry {
    Direction mu = Direction::Zero;
    int anchor = 0;
    int t = 0;
    int a_index = 0;
    int b_index = 0;
    Complex brute{};
    Complex predicted{};
};

struct RayMatchReport {
    std::vector<RayMatchEntry> entries;
    double max_abs_diff(Direction mu) const;
    double max_abs_diff() const;
};

/// Compare brute-force ray correlators against channel iteration for
/// every structurally matched anchor class:
///   anchor 0 mod 4 -> Plus ray at x = +2t, t channel applications
///   anchor 2 mod 4 -> Minus ray at x = -2t, t applications
///   anchor 1 mod 4 -> static ray, ceil(t/2) applications
///   anchor 3 mod 4 -> static ray, floor(t/2) applications
/// The application counts are the frozen t=1,2 calibration.
RayMatchReport ray_channel_match(const ChainCircuit& c, const std::vector<QubitOp>& as,
                                 const std::vector<QubitOp>& bs, int t_max);
RayMatchReport ray_channel_match(const ChainCircuit& c, const QubitOp& a, const QubitOp& b,
                                 int t_max);

/// ufloquet^periods via repeated parallel products.
Mat floquet_power(const Mat& ufloquet, int periods);

/// C(site, t) for all probe sites at once, given the t-period
/// evolution operator of a Floquet chain (values indexed by site).
std::vector<Complex> floquet_offsets(const Mat& upow, int L, const QubitOp& a, int anchor,
                                     const QubitOp& b);

/// C(x, t) for the kicked-Ising Floquet operator, t in periods.
Complex floquet_correlator(const Mat& ufloquet, int L, const QubitOp& a, int anchor,
                           const QubitOp& b, int x, int periods);

} // namespace triuni
