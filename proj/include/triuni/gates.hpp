#pragma once

#include <array>
#include <optional>
#include <vector>

#include "triuni/rng.hpp"
#include "triuni/tensor.hpp"

namespace triuni {

inline constexpr double kUnitaryTol = 1e-10;   // Frobenius
inline constexpr double kTriResidualTol = 1e-9;

/// Controlled phase: diagonal on two qubits, only |11> picks up
/// the phase e^{-i phi}.
Gate2 cp_gate(double phi);

/// u1 u2 . SWAP . CP(phi) . v1 v2 with u,v single-qubit unitaries.
/// Unitary under both the temporal and the spatial arrow.
Gate2 dual_unitary_gate(double phi, const QubitOp& u1, const QubitOp& u2,
                        const QubitOp& v1, const QubitOp& v2);

/// True iff g and its spacetime dual are both unitary within tol.
bool is_dual_unitary(const Gate2& g, double tol = kTriResidualTol);

/// 31-parameter gate family: three interaction angles, nine
/// single-qubit unitaries and a global phase.
struct TriUnitaryParams {
    std::array<double, 3> phi{0.0, 0.0, 0.0};
    std::array<QubitOp, 3> u{QubitOp::Identity(), QubitOp::Identity(), QubitOp::Identity()};
    std::array<QubitOp, 3> v{QubitOp::Identity(), QubitOp::Identity(), QubitOp::Identity()};
    std::array<QubitOp, 3> w{QubitOp::Identity(), QubitOp::Identity(), QubitOp::Identity()};
    double global_phase = 0.0;

    /// Throws validation_error if any single-qubit entry is not
    /// unitary within 1e-12.
    void validate() const;

    static TriUnitaryParams random(Rng& rng);
};

/// Composition, rightmost factor acting first:
///   u1 u2 u3 . SWAP_31 . CP_23(phi2) . v2 v3 . CP_31(phi3) . v1
///      . CP_12(phi1) . w1 w2 w3
/// Each angle keeps its qubit pair; this ordering of the three
/// controlled phases around the SWAP is the one that is unitary under
/// all three arrows of time for arbitrary single-qubit dressings.
Gate3 triunitary_gate(const TriUnitaryParams& p);

/// Residuals ||M M† - 1||_F for M = U, U-tilde, U-breve.
struct TriUnitarityReport {
    double time_residual = 0.0;
    double tilde_residual = 0.0;
    double breve_residual = 0.0;
    bool ok = false;
};

TriUnitarityReport triunitarity_report(const Gate3& g, double tol = kTriResidualTol);
bool is_triunitary(const Gate3& g, double tol = kTriResidualTol);

/// Six-leg tensor built from the five-qubit code: every one of the 10
/// three-versus-three leg bipartitions is unitary. Verified by
/// is_perfect rather than trusted.
const Gate3& perfect_tensor();

struct PerfectnessReport {
    double max_residual = 0.0;
    // Input-leg triples (from {1..6}) of any failing bipartitions.
    std::vector<std::array<int, 3>> failing;
    bool ok = false;
};

PerfectnessReport perfectness_report(const Gate3& g, double tol = kTriResidualTol);
bool is_perfect(const Gate3& g, double tol = kTriResidualTol);

/// Two-parameter diagonal-interaction family
///     U(phi,g) = SWAP_31 . CP_31(phi) . CP_23(phi) . CP_12(phi)
///                . e^{-i phi/2 sum_i Z_i} . e^{-i g sum_i X_i},
/// equal to SWAP_31 . e^{-i phi/4 (Z1Z2+Z2Z3+Z3Z1)} . e^{-i g sum X}
/// up to a global phase. The sign of the single-qubit Z layer is fixed
/// so the closed-form transfer matrix of the family comes out right.
Gate3 appendix_gate(double phi, double g);

struct KickedIsingParams {
    double J = 0.0;                 // Ising coupling within sublattice A (even sites)
    double b = 0.0;                 // transverse field on A
    std::vector<double> b_prime;    // per-site transverse field on B (odd sites)
    std::vector<double> J_prime;    // per-bond nearest-neighbour coupling
    std::vector<double> h;          // optional per-site longitudinal field
};

enum class Boundary { Periodic, Open };

/// One Floquet period
///   U_F = e^{-i H_X} e^{-i H_Z^AA} e^{-i H_X} e^{-i (H_Z^AA + H_Z^AB)}
/// as a dense 2^L x 2^L unitary. Sublattice A = even sites. L must be
/// even and at most 12.
Mat kicked_ising_floquet(int L, const KickedIsingParams& p,
                         Boundary boundary = Boundary::Periodic);

/// Haar-distributed SU(2) element from four normals normalized to a
/// unit quaternion.
QubitOp haar_su2(Rng& rng);

/// Haar-distributed U(N) element (QR of a Ginibre matrix with phase fix).
Mat haar_unitary(int dim, Rng& rng);

/// ZYZ Euler form e^{i phase} Rz(alpha) Ry(beta) Rz(gamma).
QubitOp qubit_from_zyz(double alpha, double beta, double gamma, double phase = 0.0);

/// Recover (alpha, beta, gamma, phase) with qubit_from_zyz round-trip.
std::array<double, 4> zyz_angles(const QubitOp& u);

} // namespace triuni
