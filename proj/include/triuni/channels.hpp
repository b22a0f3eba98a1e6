#pragma once

#include <array>
#include <string>

#include "triuni/gates.hpp"
#include "triuni/tensor.hpp"

namespace triuni {

/// Ray directions. Minus moves two sites left per half-layer, Plus two
/// sites right, Zero stays put.
enum class Direction { Minus, Zero, Plus };

const char* to_string(Direction mu);

/// Completely positive trace-preserving map on one qubit, stored as
/// its 4x4 Pauli transfer matrix in basis order (I, X, Y, Z):
/// ptm(alpha, beta) = Tr(sigma_alpha M(sigma_beta)) / 2.
struct SingleQubitChannel {
    Eigen::Matrix4d ptm = Eigen::Matrix4d::Identity();
    Direction mu = Direction::Zero;

    /// Apply the channel to a one-qubit operator.
    QubitOp apply(const QubitOp& a) const;
    /// Traceless 3x3 block (X,Y,Z rows/columns).
    Eigen::Matrix3d traceless_block() const;
    /// Choi matrix reconstructed from the transfer matrix.
    Eigen::Matrix4cd choi() const;

    double trace_preservation_residual() const;
    double unitality_residual() const;
    /// Most negative Choi eigenvalue (0 if none negative).
    double cp_violation() const;
};

/// Transfer channel of a tri-unitary gate along direction mu:
///   Minus: M(a) = 1/4 Tr_{2,3}[U† (1 x 1 x a) U]
///   Zero:  M(a) = 1/4 Tr_{1,3}[U† (1 x a x 1) U]
///   Plus:  M(a) = 1/4 Tr_{1,2}[U† (a x 1 x 1) U]
/// Rejects gates whose unitarity residual exceeds 1e-8.
SingleQubitChannel transfer_channel(const Gate3& g, Direction mu);

/// Eigenvalues of the traceless block, sorted by descending modulus,
/// ties broken by descending real part then descending imaginary part.
std::array<Complex, 3> channel_spectrum(const SingleQubitChannel& c);

enum class HierarchyClass {
    NonInteracting,
    InteractingNonErgodic,
    ErgodicNonMixing,
    ErgodicMixing,
    Bernoulli,
};

const char* to_string(HierarchyClass h);

struct HierarchyLabel {
    HierarchyClass label = HierarchyClass::NonInteracting;
    // lambda[mu][i], mu in (Minus, Zero, Plus) order.
    std::array<std::array<Complex, 3>, 3> eigenvalues{};
};

/// Classify by the nine traceless-block eigenvalues with tolerance
/// 1e-9 on |lambda - 1| and on |lambda|:
///   all lambda = 1                      -> NonInteracting
///   some but not all lambda = 1         -> InteractingNonErgodic
///   no lambda = 1, some |lambda| = 1    -> ErgodicNonMixing
///   all |lambda| < 1, not all ~ 0       -> ErgodicMixing
///   all |lambda| ~ 0                    -> Bernoulli
/// Rejects gates that are not tri-unitary.
HierarchyLabel classify_hierarchy(const Gate3& g);

/// (1/2) Tr(b . M_mu^t(a)) for traceless a, b. `t` counts half-layers;
/// along the moving rays one half-layer is one channel application.
/// On the static ray the channel fires only when a gate covers the
/// anchor, i.e. ceil(t/2) times for an anchor on the middle leg of a
/// first-half-layer gate (anchor_offset 1 mod 4) and floor(t/2) times
/// for the other static sublattice (anchor_offset 3 mod 4).
Complex predicted_ray_correlator(const Gate3& g, Direction mu, const QubitOp& a,
                                 const QubitOp& b, int t, int anchor_offset = 1);

/// Closed-form transfer matrix of appendix_gate(phi, g); identical for
/// all three directions.
Eigen::Matrix4d appendix_gate_ptm(double phi, double g);

/// Closed-form traceless-block eigenvalues of appendix_gate(phi, g),
/// sorted with the channel_spectrum ordering.
std::array<Complex, 3> appendix_gate_spectrum(double phi, double g);

} // namespace triuni
