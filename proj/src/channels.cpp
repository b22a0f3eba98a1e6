#include "triuni/channels.hpp"

#include <algorithm>
#include <cmath>

namespace triuni {

const char* to_string(Direction mu) {
    switch (mu) {
        case Direction::Minus: return "-";
        case Direction::Zero: return "0";
        case Direction::Plus: return "+";
    }
    return "?";
}

QubitOp SingleQubitChannel::apply(const QubitOp& a) const {
    // Pauli coefficients of a general (not necessarily Hermitian) input
    // are complex, so the transfer matrix acts on a complex 4-vector.
    Eigen::Vector4cd inc;
    for (int b = 0; b < 4; ++b) inc(b) = 0.5 * (pauli::sigma(b) * a).trace();
    Eigen::Vector4cd outc = ptm.cast<Complex>() * inc;
    QubitOp out = QubitOp::Zero();
    for (int al = 0; al < 4; ++al) out += outc(al) * pauli::sigma(al);
    return out;
}

Eigen::Matrix3d SingleQubitChannel::traceless_block() const {
    return ptm.block<3, 3>(1, 1);
}

Eigen::Matrix4cd SingleQubitChannel::choi() const {
    // Choi = (M x id)(|Omega><Omega|), |Omega> = (|00>+|11>)/sqrt(2)
    //      = 1/4 sum_ab ptm(a,b) sigma_a x sigma_b^T
    Eigen::Matrix4cd j = Eigen::Matrix4cd::Zero();
    for (int al = 0; al < 4; ++al)
        for (int be = 0; be < 4; ++be)
            j += 0.25 * ptm(al, be) *
                 kron(pauli::sigma(al), pauli::sigma(be).transpose());
    return j;
}

double SingleQubitChannel::trace_preservation_residual() const {
    Eigen::RowVector4d first = ptm.row(0);
    first(0) -= 1.0;
    return first.norm();
}

double SingleQubitChannel::unitality_residual() const {
    Eigen::Vector4d first = ptm.col(0);
    first(0) -= 1.0;
    return first.norm();
}

double SingleQubitChannel::cp_violation() const {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(choi());
    const double lo = es.eigenvalues().minCoeff();
    return lo < 0.0 ? -lo : 0.0;
}

SingleQubitChannel transfer_channel(const Gate3& g, Direction mu) {
    if (unitarity_residual(g) > 1e-8)
        throw validation_error("transfer_channel: gate is not unitary");

    // The operator enters on one qubit and the partial trace keeps the
    // qubit at the other end of the ray: Minus enters on 3 and exits
    // on 1, Zero stays on 2, Plus enters on 1 and exits on 3.
    const int in_slot = (mu == Direction::Minus) ? 2 : (mu == Direction::Zero) ? 1 : 0;
    const int out_slot = (mu == Direction::Minus) ? 0 : (mu == Direction::Zero) ? 1 : 2;

    SingleQubitChannel c;
    c.mu = mu;
    for (int be = 0; be < 4; ++be) {
        Mat a3 = embed(pauli::sigma(be), {in_slot}, 3);
        Mat evolved = g.adjoint() * a3 * g;
        Mat m = partial_trace(evolved, {out_slot}, 3) / 4.0;
        for (int al = 0; al < 4; ++al)
            c.ptm(al, be) = 0.5 * (Mat(pauli::sigma(al)) * m).trace().real();
    }
    return c;
}

namespace {

bool spectrum_less(const Complex& a, const Complex& b) {
    if (std::abs(a) != std::abs(b)) return std::abs(a) > std::abs(b);
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
}

} // namespace

std::array<Complex, 3> channel_spectrum(const SingleQubitChannel& c) {
    Eigen::EigenSolver<Eigen::Matrix3d> es(c.traceless_block());
    std::array<Complex, 3> lam;
    for (int i = 0; i < 3; ++i) lam[i] = es.eigenvalues()(i);
    std::sort(lam.begin(), lam.end(), spectrum_less);
    return lam;
}

const char* to_string(HierarchyClass h) {
    switch (h) {
        case HierarchyClass::NonInteracting: return "NonInteracting";
        case HierarchyClass::InteractingNonErgodic: return "InteractingNonErgodic";
        case HierarchyClass::ErgodicNonMixing: return "ErgodicNonMixing";
        case HierarchyClass::ErgodicMixing: return "ErgodicMixing";
        case HierarchyClass::Bernoulli: return "Bernoulli";
    }
    return "?";
}

HierarchyLabel classify_hierarchy(const Gate3& g) {
    if (!is_triunitary(g))
        throw validation_error("classify_hierarchy: gate is not tri-unitary");
    constexpr double tau = 1e-9;

    HierarchyLabel out;
    int unit = 0, unimodular = 0, tiny = 0;
    const std::array<Direction, 3> dirs = {Direction::Minus, Direction::Zero, Direction::Plus};
    for (int d = 0; d < 3; ++d) {
        auto lam = channel_spectrum(transfer_channel(g, dirs[d]));
        out.eigenvalues[d] = lam;
        for (const auto& l : lam) {
            if (std::abs(l - 1.0) < tau) ++unit;
            if (std::abs(std::abs(l) - 1.0) < tau) ++unimodular;
            if (std::abs(l) < tau) ++tiny;
        }
    }

    if (unit == 9)
        out.label = HierarchyClass::NonInteracting;
    else if (unit > 0)
        out.label = HierarchyClass::InteractingNonErgodic;
    else if (unimodular > 0)
        out.label = HierarchyClass::ErgodicNonMixing;
    else if (tiny == 9)
        out.label = HierarchyClass::Bernoulli;
    else
        out.label = HierarchyClass::ErgodicMixing;
    return out;
}

Complex predicted_ray_correlator(const Gate3& g, Direction mu, const QubitOp& a,
                                 const QubitOp& b, int t, int anchor_offset) {
    if (t < 1) throw validation_error("predicted_ray_correlator: need t >= 1");
    if (std::abs(a.trace()) > 1e-12 || std::abs(b.trace()) > 1e-12)
        throw validation_error("predicted_ray_correlator: operators must be traceless");

    int reps = t;
    if (mu == Direction::Zero) {
        const int m = ((anchor_offset % 4) + 4) % 4;
        if (m != 1 && m != 3)
            throw validation_error("predicted_ray_correlator: static-ray anchor must be odd");
        reps = (m == 1) ? (t + 1) / 2 : t / 2;
    }

    SingleQubitChannel c = transfer_channel(g, mu);
    QubitOp cur = a;
    for (int k = 0; k < reps; ++k) cur = c.apply(cur);
    return 0.5 * (Mat(b) * Mat(cur)).trace();
}

Eigen::Matrix4d appendix_gate_ptm(double phi, double g) {
    const double c2 = std::cos(phi / 2.0) * std::cos(phi / 2.0);
    const double c2g = std::cos(2.0 * g), s2g = std::sin(2.0 * g);
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    m(0, 0) = 1.0;
    m(1, 1) = c2;
    m(2, 2) = c2g * c2;
    m(2, 3) = s2g;
    m(3, 2) = -s2g * c2;
    m(3, 3) = c2g;
    return m;
}

std::array<Complex, 3> appendix_gate_spectrum(double phi, double g) {
    const double c2 = std::cos(phi / 2.0) * std::cos(phi / 2.0);
    const Complex f2 = -13.0 - 20.0 * std::cos(phi) +
                       2.0 * std::cos(4.0 * g) * std::pow(3.0 + std::cos(phi), 2) +
                       std::cos(2.0 * phi);
    const Complex f = std::sqrt(f2);
    const double lead = 0.25 * std::cos(2.0 * g) * (3.0 + std::cos(phi));
    std::array<Complex, 3> lam = {Complex(c2, 0.0), lead - f / 8.0, lead + f / 8.0};
    std::sort(lam.begin(), lam.end(), spectrum_less);
    return lam;
}

} // namespace triuni
