#include <doctest.h>

#include <algorithm>
#include <complex>
#include <vector>

#include "triuni/gates.hpp"
#include "triuni/rng.hpp"
#include "triuni/tensor.hpp"

using namespace triuni;

namespace {

Gate3 swap13_gate() {
    TriUnitaryParams p;  // all angles zero, all dressings identity
    return triunitary_gate(p);
}

std::vector<Complex> sorted_entries(const Gate3& g) {
    std::vector<Complex> v;
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c) v.push_back(g(r, c));
    std::sort(v.begin(), v.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return v;
}

} // namespace

TEST_CASE("pauli algebra") {
    const Complex i(0, 1);
    CHECK((pauli::X() * pauli::Y() - i * pauli::Z()).norm() == doctest::Approx(0).epsilon(1e-14));
    CHECK((pauli::Y() * pauli::Z() - i * pauli::X()).norm() == doctest::Approx(0).epsilon(1e-14));
    CHECK((pauli::Z() * pauli::X() - i * pauli::Y()).norm() == doctest::Approx(0).epsilon(1e-14));
    for (int a = 0; a < 4; ++a)
        CHECK((pauli::sigma(a) * pauli::sigma(a) - pauli::I()).norm() < 1e-14);
}

TEST_CASE("reshuffle of SWAP_13 stays unitary") {
    Gate3 r = reshuffle(swap13_gate(), Rotation::Tilde);
    CHECK(unitarity_residual(r) < 1e-12);
}

TEST_CASE("reshuffle of the identity is rank deficient") {
    Gate3 r = reshuffle(Gate3::Identity(), Rotation::Tilde);
    CHECK(unitarity_residual(r) > 1.0);
    // columns with a1 != a4 vanish: tilde inputs are (a4, a1, a2)
    for (int col = 0; col < 8; ++col) {
        const int a4 = (col >> 2) & 1, a1 = (col >> 1) & 1;
        if (a4 != a1) CHECK(r.col(col).norm() == 0.0);
    }
}

TEST_CASE("tilde twice equals breve, breve three times is the identity map") {
    for (int trial = 0; trial < 5; ++trial) {
        Rng rng(40 + trial);
        Gate3 g = haar_unitary(8, rng);
        Gate3 t2 = reshuffle(reshuffle(g, Rotation::Tilde), Rotation::Tilde);
        CHECK((t2 - reshuffle(g, Rotation::Breve)).norm() == 0.0);
        Gate3 b3 = reshuffle(
            reshuffle(reshuffle(g, Rotation::Breve), Rotation::Breve), Rotation::Breve);
        CHECK((b3 - g).norm() == 0.0);
    }
}

TEST_CASE("reshuffle permutes entries") {
    Rng rng(7);
    Gate3 g = haar_unitary(8, rng);
    auto base = sorted_entries(g);
    for (auto rot : {Rotation::Tilde, Rotation::Breve}) {
        auto moved = sorted_entries(reshuffle(g, rot));
        for (std::size_t k = 0; k < base.size(); ++k)
            CHECK(std::abs(base[k] - moved[k]) == 0.0);
    }
}

TEST_CASE("partial trace basics") {
    Mat i8 = Mat::Identity(8, 8);
    Mat r = partial_trace(i8, {2}, 3);
    CHECK((r - 4.0 * Mat::Identity(2, 2)).norm() < 1e-14);

    ChainState zero = ChainState::basis(3, 0);
    Mat rho = zero.amps * zero.amps.adjoint();
    Mat r1 = partial_trace(rho, {1}, 3);
    Mat proj0 = Mat::Zero(2, 2);
    proj0(0, 0) = 1.0;
    CHECK((r1 - proj0).norm() < 1e-14);

    // Bell pair: single-site reduction is maximally mixed
    Vec bell(4);
    bell << 1 / std::sqrt(2.0), 0, 0, 1 / std::sqrt(2.0);
    Mat rb = partial_trace(Mat(bell * bell.adjoint()), {0}, 2);
    CHECK((rb - 0.5 * Mat::Identity(2, 2)).norm() < 1e-14);

    CHECK_THROWS_AS(partial_trace(i8, {3}, 3), validation_error);
    CHECK_THROWS_AS(partial_trace(i8, {0, 0}, 3), validation_error);
}

TEST_CASE("partial trace preserves trace and positivity") {
    Rng rng(11);
    for (int trial = 0; trial < 5; ++trial) {
        Mat a(16, 16);
        for (int r = 0; r < 16; ++r)
            for (int c = 0; c < 16; ++c) a(r, c) = Complex(rng.normal(), rng.normal());
        Mat psd = a * a.adjoint();
        Mat red = partial_trace(psd, {1, 3}, 4);
        CHECK(std::abs(red.trace().real() - psd.trace().real()) < 1e-9 * psd.trace().real());
        Eigen::SelfAdjointEigenSolver<Mat> es(red);
        CHECK(es.eigenvalues().minCoeff() > -1e-12);
    }
}

TEST_CASE("apply_gate moves excitations like SWAP") {
    ChainState s = ChainState::basis(3, 0);
    apply_gate(s, swap13_gate(), {0, 1, 2});
    CHECK(std::abs(s.amps(0) - 1.0) < 1e-14);

    ChainState s2 = ChainState::basis(3, 4);  // |100>
    apply_gate(s2, swap13_gate(), {0, 1, 2});
    CHECK(std::abs(s2.amps(1) - 1.0) < 1e-14);  // |001>
}

TEST_CASE("apply_gate then inverse restores the state") {
    Rng rng(5);
    ChainState s{6, Vec::Zero(64)};
    for (int k = 0; k < 64; ++k) s.amps(k) = Complex(rng.normal(), rng.normal());
    s.amps.normalize();
    Vec before = s.amps;
    Gate3 g = haar_unitary(8, rng);
    apply_gate(s, g, {1, 3, 4});
    CHECK(std::abs(s.norm() - 1.0) < 1e-12);
    apply_gate(s, Mat(g.adjoint()), {1, 3, 4});
    CHECK((s.amps - before).norm() < 1e-10);
}

TEST_CASE("apply_gate rejects repeated or out-of-range sites") {
    ChainState s = ChainState::basis(4, 0);
    Gate3 g = Gate3::Identity();
    CHECK_THROWS_AS(apply_gate(s, g, {0, 0, 1}), validation_error);
    CHECK_THROWS_AS(apply_gate(s, g, {0, 1, 4}), validation_error);
}

TEST_CASE("disjoint gate applications commute") {
    Rng rng(21);
    ChainState s{8, Vec::Zero(256)};
    for (int k = 0; k < 256; ++k) s.amps(k) = Complex(rng.normal(), rng.normal());
    s.amps.normalize();
    Gate3 g1 = haar_unitary(8, rng), g2 = haar_unitary(8, rng);

    ChainState a = s, b = s;
    apply_gate(a, g1, {0, 1, 2});
    apply_gate(a, g2, {4, 5, 6});
    apply_gate(b, g2, {4, 5, 6});
    apply_gate(b, g1, {0, 1, 2});
    CHECK((a.amps - b.amps).norm() < 1e-12);
}

TEST_CASE("operator conjugation matches dense embedding") {
    Rng rng(31);
    const int L = 5;
    Mat op(32, 32);
    for (int r = 0; r < 32; ++r)
        for (int c = 0; c < 32; ++c) op(r, c) = Complex(rng.normal(), rng.normal());
    Gate3 g = haar_unitary(8, rng);
    Mat direct = op;
    conjugate_sites(direct, g, {1, 2, 4}, L);
    Mat full = embed(g, {1, 2, 4}, L);
    Mat expect = full.adjoint() * op * full;
    CHECK((direct - expect).norm() < 1e-10);
}

TEST_CASE("trace_with_site_op agrees with the embedded product") {
    Rng rng(33);
    const int L = 5;
    Mat op(32, 32);
    for (int r = 0; r < 32; ++r)
        for (int c = 0; c < 32; ++c) op(r, c) = Complex(rng.normal(), rng.normal());
    for (int site = 0; site < L; ++site) {
        const Complex fast = trace_with_site_op(op, pauli::Y(), site, L);
        const Complex slow = (op * embed(pauli::Y(), {site}, L)).trace();
        CHECK(std::abs(fast - slow) < 1e-10);
    }
}

TEST_CASE("dual of SWAP is unitary") {
    Gate2 swap = Gate2::Zero();
    swap(0, 0) = swap(3, 3) = swap(1, 2) = swap(2, 1) = 1.0;
    CHECK(unitarity_residual(dual(swap)) < 1e-14);
}
