#include "triuni/gates.hpp"

#include <cmath>
#include <numbers>

namespace triuni {

namespace {

constexpr Complex kI{0.0, 1.0};

Gate3 swap13() {
    Gate3 s = Gate3::Zero();
    for (int b1 = 0; b1 < 2; ++b1)
        for (int b2 = 0; b2 < 2; ++b2)
            for (int b3 = 0; b3 < 2; ++b3)
                s((b3 << 2) | (b2 << 1) | b1, (b1 << 2) | (b2 << 1) | b3) = 1.0;
    return s;
}

Gate3 one_qubit_layer(const QubitOp& a, const QubitOp& b, const QubitOp& c) {
    return Gate3(kron(a, b, c));
}

// CP(phi) embedded on a pair of the three qubits, phase e^{-i phi} on |11>.
Gate3 cp_on(double phi, int qa, int qb) {
    Gate3 d = Gate3::Identity();
    const Complex ph = std::exp(-kI * phi);
    for (int idx = 0; idx < 8; ++idx) {
        const int ba = (idx >> (2 - qa)) & 1;
        const int bb = (idx >> (2 - qb)) & 1;
        if (ba && bb) d(idx, idx) = ph;
    }
    return d;
}

} // namespace

Gate2 cp_gate(double phi) {
    Gate2 g = Gate2::Identity();
    g(3, 3) = std::exp(-kI * phi);
    return g;
}

namespace {

void require_unitary_1q(const QubitOp& u, const char* who) {
    if (unitarity_residual(u) > 1e-12)
        throw validation_error(std::string(who) + ": single-qubit entry is not unitary");
}

} // namespace

Gate2 dual_unitary_gate(double phi, const QubitOp& u1, const QubitOp& u2,
                        const QubitOp& v1, const QubitOp& v2) {
    require_unitary_1q(u1, "dual_unitary_gate");
    require_unitary_1q(u2, "dual_unitary_gate");
    require_unitary_1q(v1, "dual_unitary_gate");
    require_unitary_1q(v2, "dual_unitary_gate");
    Gate2 swap = Gate2::Zero();
    swap(0, 0) = swap(3, 3) = 1.0;
    swap(1, 2) = swap(2, 1) = 1.0;
    return Gate2(kron(u1, u2)) * swap * cp_gate(phi) * Gate2(kron(v1, v2));
}

bool is_dual_unitary(const Gate2& g, double tol) {
    return unitarity_residual(g) < tol && unitarity_residual(dual(g)) < tol;
}

void TriUnitaryParams::validate() const {
    for (const auto& m : u) require_unitary_1q(m, "TriUnitaryParams");
    for (const auto& m : v) require_unitary_1q(m, "TriUnitaryParams");
    for (const auto& m : w) require_unitary_1q(m, "TriUnitaryParams");
}

TriUnitaryParams TriUnitaryParams::random(Rng& rng) {
    TriUnitaryParams p;
    for (auto& m : p.u) m = haar_su2(rng);
    for (auto& m : p.v) m = haar_su2(rng);
    for (auto& m : p.w) m = haar_su2(rng);
    for (auto& a : p.phi) a = rng.uniform(0.0, 2.0 * std::numbers::pi);
    p.global_phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
    return p;
}

Gate3 triunitary_gate(const TriUnitaryParams& p) {
    p.validate();
    const QubitOp id = QubitOp::Identity();
    // Each interaction angle keeps its qubit pair (phi1 <-> CP_12,
    // phi2 <-> CP_23, phi3 <-> CP_31). The product order below, with
    // the 1-3 phase in the middle slot and v1 between it and CP_12, is
    // the one that makes all three reshuffles unitary for arbitrary
    // single-qubit dressings; see the family tests.
    Gate3 g = one_qubit_layer(p.u[0], p.u[1], p.u[2]);
    g = g * swap13();
    g = g * cp_on(p.phi[1], 1, 2);                       // CP_23(phi2)
    g = g * one_qubit_layer(id, p.v[1], p.v[2]);         // v2 v3
    g = g * cp_on(p.phi[2], 0, 2);                       // CP_31(phi3)
    g = g * one_qubit_layer(p.v[0], id, id);             // v1
    g = g * cp_on(p.phi[0], 0, 1);                       // CP_12(phi1)
    g = g * one_qubit_layer(p.w[0], p.w[1], p.w[2]);
    return Gate3(std::exp(kI * p.global_phase) * g);
}

TriUnitarityReport triunitarity_report(const Gate3& g, double tol) {
    TriUnitarityReport r;
    r.time_residual = unitarity_residual(g);
    r.tilde_residual = unitarity_residual(reshuffle(g, Rotation::Tilde));
    r.breve_residual = unitarity_residual(reshuffle(g, Rotation::Breve));
    r.ok = r.time_residual < tol && r.tilde_residual < tol && r.breve_residual < tol;
    return r;
}

bool is_triunitary(const Gate3& g, double tol) { return triunitarity_report(g, tol).ok; }

namespace {

// Five-qubit-code codewords from the stabilizer group generated by
// XZZXI and its cyclic shifts; |1_L> = XXXXX |0_L>.
Eigen::VectorXcd code_state(int logical) {
    const QubitOp& I = pauli::I();
    const QubitOp& X = pauli::X();
    const QubitOp& Z = pauli::Z();
    const std::array<std::array<const QubitOp*, 5>, 4> gens = {{
        {&X, &Z, &Z, &X, &I},
        {&I, &X, &Z, &Z, &X},
        {&X, &I, &X, &Z, &Z},
        {&Z, &X, &I, &X, &Z},
    }};
    Mat proj = Mat::Identity(32, 32);
    for (const auto& gen : gens) {
        Mat g = kron(kron(*gen[0], *gen[1], *gen[2]), kron(*gen[3], *gen[4]));
        proj = proj * (Mat::Identity(32, 32) + g) / 2.0;
    }
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(32);
    v(0) = 1.0; // |00000>
    v = proj * v;
    v.normalize();
    if (logical == 1) {
        Mat xl = kron(kron(pauli::X(), pauli::X(), pauli::X()), kron(pauli::X(), pauli::X()));
        v = xl * v;
    }
    return v;
}

Gate3 build_perfect_tensor() {
    // Six-qubit state (|0>|0_L> + |1>|1_L>)/sqrt(2); legs (1,2,3) index
    // the rows of the reshaped 8x8 block, legs (4,5,6) the columns.
    Eigen::VectorXcd zero = code_state(0), one = code_state(1);
    Eigen::VectorXcd psi(64);
    for (int p = 0; p < 32; ++p) {
        psi(p) = zero(p) / std::numbers::sqrt2;
        psi(32 + p) = one(p) / std::numbers::sqrt2;
    }
    Gate3 g;
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c) g(r, c) = psi(8 * c + r) * std::sqrt(8.0);
    return g;
}

} // namespace

const Gate3& perfect_tensor() {
    static const Gate3 g = build_perfect_tensor();
    return g;
}

PerfectnessReport perfectness_report(const Gate3& g, double tol) {
    // View the gate as the rank-6 tensor T[a1..a6] = U(row(a4a5a6), col(a1a2a3))
    // and test each bipartition {legs} = inputs vs complement = outputs.
    auto leg_bit = [&](int leg, int row, int col) {
        // legs 1..3 live on col (a1 msb), legs 4..6 on row (a4 msb)
        if (leg <= 3) return (col >> (3 - leg)) & 1;
        return (row >> (6 - leg)) & 1;
    };
    PerfectnessReport rep;
    for (int i = 2; i <= 6; ++i) {
        for (int j = i + 1; j <= 6; ++j) {
            const std::array<int, 3> in = {1, i, j};
            std::array<int, 3> out{};
            int n = 0;
            for (int leg = 2; leg <= 6; ++leg)
                if (leg != i && leg != j) out[n++] = leg;
            Mat m(8, 8);
            for (int row = 0; row < 8; ++row) {
                for (int col = 0; col < 8; ++col) {
                    int rr = 0, cc = 0;
                    for (int kk = 0; kk < 3; ++kk) {
                        cc = (cc << 1) | leg_bit(in[kk], row, col);
                        rr = (rr << 1) | leg_bit(out[kk], row, col);
                    }
                    m(rr, cc) = g(row, col);
                }
            }
            const double res = unitarity_residual(m);
            rep.max_residual = std::max(rep.max_residual, res);
            if (res >= tol) rep.failing.push_back(in);
        }
    }
    rep.ok = rep.failing.empty();
    return rep;
}

bool is_perfect(const Gate3& g, double tol) { return perfectness_report(g, tol).ok; }

Gate3 appendix_gate(double phi, double g) {
    TriUnitaryParams p;
    p.phi = {phi, phi, phi};
    const QubitOp zphase =
        (QubitOp() << std::exp(-kI * phi / 2.0), 0, 0, std::exp(kI * phi / 2.0)).finished();
    const QubitOp xkick = std::cos(g) * QubitOp::Identity() - kI * std::sin(g) * pauli::X();
    const QubitOp w = zphase * xkick;
    p.w = {w, w, w};
    return triunitary_gate(p);
}

Mat kicked_ising_floquet(int L, const KickedIsingParams& p, Boundary boundary) {
    if (L % 2 != 0) throw validation_error("kicked_ising_floquet: L must be even");
    if (L < 4 || L > 12) throw resource_error("kicked_ising_floquet: need 4 <= L <= 12");
    const std::size_t dim = std::size_t{1} << L;

    auto bprime = [&](int n) { return p.b_prime.empty() ? 0.0 : p.b_prime.at(n / 2); };
    auto jprime = [&](int n) { return p.J_prime.empty() ? 0.0 : p.J_prime.at(n); };
    auto hfield = [&](int n) { return p.h.empty() ? 0.0 : p.h.at(n); };

    // Diagonal phase layers from the Ising parts.
    Eigen::VectorXcd phase_zaa(dim), phase_zab(dim);
    for (std::size_t s = 0; s < dim; ++s) {
        double eaa = 0.0, eab = 0.0, eh = 0.0;
        auto zbit = [&](int site) { return ((s >> (L - 1 - site)) & 1) ? -1.0 : 1.0; };
        for (int n = 0; n < L; n += 2) {
            const int m = n + 2;
            if (m < L || boundary == Boundary::Periodic) eaa += p.J * zbit(n) * zbit(m % L);
        }
        for (int n = 0; n < L; ++n) {
            const int m = n + 1;
            if (m < L || boundary == Boundary::Periodic) eab += jprime(n) * zbit(n) * zbit(m % L);
            eh += hfield(n) * zbit(n);
        }
        phase_zaa(s) = std::exp(-kI * eaa);
        phase_zab(s) = std::exp(-kI * (eab + eh));
    }

    Mat u = Mat::Identity(dim, dim);
    // rightmost factor first: e^{-i(H_Z^AA + H_Z^AB)}
    for (std::size_t s = 0; s < dim; ++s) u.row(s) *= phase_zaa(s) * phase_zab(s);

    auto kick = [&](Mat& m) {
        for (int n = 0; n < L; ++n) {
            const double theta = (n % 2 == 0) ? p.b : bprime(n);
            if (theta == 0.0) continue;
            const QubitOp rx = std::cos(theta) * QubitOp::Identity() - kI * std::sin(theta) * pauli::X();
            apply_left(m, rx, {n}, L);
        }
    };

    kick(u);
    for (std::size_t s = 0; s < dim; ++s) u.row(s) *= phase_zaa(s);
    kick(u);
    return u;
}

QubitOp haar_su2(Rng& rng) {
    double q0 = rng.normal(), q1 = rng.normal(), q2 = rng.normal(), q3 = rng.normal();
    const double n = std::sqrt(q0 * q0 + q1 * q1 + q2 * q2 + q3 * q3);
    q0 /= n; q1 /= n; q2 /= n; q3 /= n;
    return QubitOp(q0 * QubitOp::Identity() +
                   kI * (q1 * pauli::X() + q2 * pauli::Y() + q3 * pauli::Z()));
}

Mat haar_unitary(int dim, Rng& rng) {
    Mat a(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            a(i, j) = Complex(rng.normal(), rng.normal());
    Eigen::HouseholderQR<Mat> qr(a);
    Mat q = qr.householderQ();
    Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < dim; ++j) {
        Complex d = r(j, j);
        q.col(j) *= d / std::abs(d);
    }
    return q;
}

QubitOp qubit_from_zyz(double alpha, double beta, double gamma, double phase) {
    auto rz = [](double t) {
        return (QubitOp() << std::exp(-kI * t / 2.0), 0, 0, std::exp(kI * t / 2.0)).finished();
    };
    const QubitOp ry = (QubitOp() << std::cos(beta / 2.0), -std::sin(beta / 2.0),
                        std::sin(beta / 2.0), std::cos(beta / 2.0))
                           .finished();
    return QubitOp(std::exp(kI * phase) * rz(alpha) * ry * rz(gamma));
}

std::array<double, 4> zyz_angles(const QubitOp& u) {
    require_unitary_1q(u, "zyz_angles");
    // strip the determinant phase, then read the SU(2) angles off
    const Complex det = u.determinant();
    const double phase = 0.5 * std::arg(det);
    QubitOp s = std::exp(-kI * phase) * u;
    const double beta = 2.0 * std::atan2(std::abs(s(1, 0)), std::abs(s(0, 0)));
    double alpha = 0.0, gamma = 0.0;
    if (std::abs(s(0, 0)) > 1e-12 && std::abs(s(1, 0)) > 1e-12) {
        const double a00 = std::arg(s(0, 0)), a10 = std::arg(s(1, 0));
        alpha = -(a00 - a10);
        gamma = -(a00 + a10);
    } else if (std::abs(s(0, 0)) > 1e-12) {
        gamma = -2.0 * std::arg(s(0, 0));
    } else {
        gamma = -2.0 * std::arg(s(1, 0));
    }
    return {alpha, beta, gamma, phase};
}

} // namespace triuni
