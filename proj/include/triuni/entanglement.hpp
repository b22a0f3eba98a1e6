#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "triuni/chain.hpp"
#include "triuni/tensor.hpp"

namespace triuni {

/// Bell pairs on the even sublattice intercalated by |0> sites:
/// pairs (4k+2, 4k+4) wrapping under periodic boundaries, truncated to
/// in-range pairs for open boundaries (a dangling product site is fine).
struct SolvableLayout {
    std::vector<std::pair<int, int>> pairs;
    std::vector<int> product_sites;
};

SolvableLayout solvable_layout(int L, Boundary boundary);
ChainState solvable_state(int L, Boundary boundary = Boundary::Periodic);

/// Eigenvalues of the reduced density matrix on `region_len` sites
/// starting at `region_begin` (contiguous, wrap allowed for periodic
/// use). Computed on the smaller side of the cut; descending order.
Eigen::VectorXd entanglement_spectrum(const ChainState& state, int region_begin, int region_len);

/// Renyi-n entropy in bits; n = 1 gives von Neumann.
double entropy(const ChainState& state, int region_begin, int region_len, double n);
double entropy_from_spectrum(const Eigen::VectorXd& lam, double n);

/// Deviation of the spectrum from a flat rank-2^S profile:
/// max over retained eigenvalues of |lambda 2^S - 1| plus the total
/// mass below the rank cutoff, with S = round(S_2).
double spectrum_flatness(const ChainState& state, int region_begin, int region_len);
double flatness_from_spectrum(const Eigen::VectorXd& lam);

/// ell - 2^(2 ell - L - 1)/ln 2 bits; requires 2 ell <= L.
double page_value(int ell, int L);

/// True when a gate of the half-layer with the given parity spans the
/// cut between sites j and j+1 (mod L for periodic chains).
bool cut_acted(const ChainCircuit& c, int cut_j, int parity);

/// Predicted exact entropy (bits) of the solvable state evolved for t
/// half-layers, valid inside the maximal-growth window: sum over the
/// region's cuts of t + [cut spanned by the last half-layer], reducing
/// at t=0 to the number of straddling Bell pairs.
int solvable_entropy_prediction(const ChainCircuit& c, int region_begin, int region_len, int t);

/// SWAP-limit kinematics: positions of the initial-site contents after
/// t half-layers of pure SWAP_13 gates (permutation dynamics).
std::vector<int> swap_limit_positions(const ChainCircuit& c, int t);

/// ... and the resulting straddling-pair count for a region, the exact
/// entropy of any phi = 0 circuit.
int swap_limit_entropy(const ChainCircuit& c, int region_begin, int region_len, int t);

struct EntropyPoint {
    int t = 0;
    std::uint64_t seed = 0;
    double phi = 0.0;
    double s2_bits = 0.0;
    double s3_bits = 0.0;
    double svn_bits = 0.0;
    double flatness = 0.0;
};

/// Evolve the solvable state under the Floquet circuit produced by
/// gate_source(seed) and record the region entropies for t = 0..t_max.
std::vector<EntropyPoint> growth_experiment(
    const std::function<Gate3(std::uint64_t)>& gate_source, int L, Boundary boundary,
    int region_begin, int region_len, int t_max, const std::vector<std::uint64_t>& seeds,
    double phi_tag = 0.0);

} // namespace triuni
