#include <doctest.h>

#include <cmath>
#include <numbers>

#include "triuni/entanglement.hpp"
#include "triuni/gates.hpp"

using namespace triuni;
using std::numbers::pi;

namespace {

Gate3 random_tu(std::uint64_t seed) {
    Rng rng(seed);
    return triunitary_gate(TriUnitaryParams::random(rng));
}

Gate3 phi_gate(double phi, std::uint64_t seed) {
    Rng rng(seed);
    TriUnitaryParams p;
    p.phi = {phi, phi, phi};
    for (auto& m : p.u) m = haar_su2(rng);
    for (auto& m : p.v) m = haar_su2(rng);
    for (auto& m : p.w) m = haar_su2(rng);
    return triunitary_gate(p);
}

} // namespace

TEST_CASE("solvable state layout and norm") {
    auto lay = solvable_layout(8, Boundary::Periodic);
    CHECK(lay.pairs.size() == 2);
    CHECK(lay.product_sites.size() == 4);

    ChainState psi = solvable_state(8);
    CHECK(std::abs(psi.norm() - 1.0) < 1e-13);

    // region {0,1}: only the pair (6,0) straddles a cut -> 1 bit
    CHECK(entropy(psi, 0, 2, 2) == doctest::Approx(1.0).epsilon(1e-10));
    // region {3,...,6}: pairs (2,4) and (6,0) each straddle -> 2 bits
    CHECK(entropy(psi, 3, 4, 2) == doctest::Approx(2.0).epsilon(1e-10));

    // single member of a Bell pair is maximally mixed
    auto lam = entanglement_spectrum(psi, 0, 1);
    CHECK(lam(0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(lam(1) == doctest::Approx(0.5).epsilon(1e-12));

    CHECK_THROWS_AS(solvable_state(2), validation_error);

    // open-boundary truncation keeps a dangling product site
    auto open_lay = solvable_layout(19, Boundary::Open);
    CHECK(open_lay.pairs.size() == 4);
}

TEST_CASE("entropy basics") {
    ChainState product = ChainState::basis(6, 5);
    for (double n : {1.0, 2.0, 3.0}) CHECK(entropy(product, 0, 3, n) < 1e-12);

    ChainState psi = solvable_state(8);
    // a straddling Bell pair gives one bit for every Renyi index
    for (double n : {1.0, 2.0, 3.0, 7.0})
        CHECK(entropy(psi, 3, 4, n) == doctest::Approx(2.0).epsilon(1e-10));

    CHECK_THROWS_AS(entropy(product, 0, 6, 2), validation_error);
    CHECK_THROWS_AS(entropy(product, 0, 0, 2), validation_error);
}

TEST_CASE("maximally mixed two-qubit block has two bits") {
    // build (|00>+|11>)(x2 pairs) so that region {0,1} is fully mixed:
    // pair sites (0,2) and (1,3)
    ChainState psi{4, Vec::Zero(16)};
    for (int a : {0, 1})
        for (int b : {0, 1}) {
            const int idx = (a << 3) | (b << 2) | (a << 1) | b;
            psi.amps(idx) = 0.5;
        }
    for (double n : {1.0, 2.0, 5.0}) CHECK(entropy(psi, 0, 2, n) == doctest::Approx(2.0));
    CHECK(spectrum_flatness(psi, 0, 2) < 1e-12);
}

TEST_CASE("page value formula") {
    CHECK(page_value(13, 27) == doctest::Approx(13.0 - 1.0 / (4.0 * std::log(2.0))).epsilon(1e-12));
    CHECK(page_value(1, 2) == doctest::Approx(1.0 - 1.0 / (2.0 * std::log(2.0))).epsilon(1e-12));
    CHECK(page_value(7, 14) == doctest::Approx(7.0 - 0.5 / std::log(2.0)).epsilon(1e-12));
    CHECK_THROWS_AS(page_value(8, 14), validation_error);
}

TEST_CASE("page value matches Haar-random states") {
    const int L = 14, ell = 7;
    Rng rng(404);
    double acc = 0;
    const int samples = 50;
    for (int s = 0; s < samples; ++s) {
        ChainState psi{L, Vec::Zero(Eigen::Index(1) << L)};
        for (Eigen::Index k = 0; k < psi.amps.size(); ++k)
            psi.amps(k) = Complex(rng.normal(), rng.normal());
        psi.amps.normalize();
        acc += entropy(psi, 0, ell, 1.0);
    }
    CHECK(std::abs(acc / samples - page_value(ell, L)) < 0.05);
}

TEST_CASE("cut classes from the layout") {
    ChainCircuit c(12, Boundary::Periodic, triunitary_gate(TriUnitaryParams{}));
    // even half-layer gates sit at (0,1,2), (4,5,6), (8,9,10)
    CHECK(cut_acted(c, 0, 0));
    CHECK(cut_acted(c, 1, 0));
    CHECK_FALSE(cut_acted(c, 2, 0));
    CHECK_FALSE(cut_acted(c, 3, 0));
    CHECK(cut_acted(c, 2, 1));
    CHECK(cut_acted(c, 3, 1));
    CHECK_FALSE(cut_acted(c, 0, 1));
}

TEST_CASE("solvable entropy law at desk scale") {
    // L=12, region of 6: cuts in different classes, S(t) = 2t + 1
    for (std::uint64_t seed : {5u, 6u}) {
        ChainCircuit c(12, Boundary::Periodic, random_tu(seed));
        ChainState psi = solvable_state(12);
        CHECK(entropy(psi, 1, 6, 2) ==
              doctest::Approx(double(solvable_entropy_prediction(c, 1, 6, 0))).epsilon(1e-10));
        apply_half_layer(psi, c, 0);
        const int predicted = solvable_entropy_prediction(c, 1, 6, 1);
        CHECK(std::abs(entropy(psi, 1, 6, 2) - predicted) < 1e-8);
        CHECK(std::abs(entropy(psi, 1, 6, 1) - predicted) < 1e-8);
        CHECK(spectrum_flatness(psi, 1, 6) < 1e-8);
    }
}

TEST_CASE("renyi independence and flatness inside the solvable window") {
    ChainCircuit c(16, Boundary::Periodic, random_tu(77));
    ChainState psi = solvable_state(16);
    for (int t = 1; t <= 2; ++t) {
        apply_half_layer(psi, c, half_layer_parity(t));
        auto lam = entanglement_spectrum(psi, 0, 8);
        const double s2 = entropy_from_spectrum(lam, 2.0);
        CHECK(std::abs(s2 - entropy_from_spectrum(lam, 3.0)) < 1e-8);
        CHECK(std::abs(s2 - entropy_from_spectrum(lam, 1.0)) < 1e-8);
        CHECK(flatness_from_spectrum(lam) < 1e-8);
    }
}

TEST_CASE("early growth is identical across gate draws") {
    const int L = 16, begin = 0, len = 8;
    std::vector<double> reference;
    for (std::uint64_t seed : {11u, 12u, 13u}) {
        for (double phi : {0.0, 0.4, pi / 2}) {
            ChainCircuit c(L, Boundary::Periodic, phi_gate(phi, seed));
            ChainState psi = solvable_state(L);
            std::vector<double> curve;
            for (int t = 0; t <= 2; ++t) {  // window t < len/4
                if (t > 0) apply_half_layer(psi, c, half_layer_parity(t));
                curve.push_back(entropy(psi, begin, len, 2.0));
            }
            if (reference.empty()) {
                reference = curve;
            } else {
                for (std::size_t k = 0; k < curve.size(); ++k)
                    CHECK(std::abs(curve[k] - reference[k]) < 1e-8);
            }
        }
    }
}

TEST_CASE("swap-limit kinematics oracle matches the circuit") {
    const int L = 19, begin = 0, len = 9;
    ChainCircuit c(L, Boundary::Open, phi_gate(0.0, 3));
    ChainState psi = solvable_state(L, Boundary::Open);
    for (int t = 0; t <= 24; ++t) {
        if (t > 0) apply_half_layer(psi, c, half_layer_parity(t));
        const int expect = swap_limit_entropy(c, begin, len, t);
        CHECK(std::abs(entropy(psi, begin, len, 2.0) - expect) < 1e-8);
    }
}

TEST_CASE("decoupled middle line halts entanglement growth") {
    // phi1 = phi2 = 0 detaches the middle qubit of every gate; the even
    // sublattice becomes a dual-unitary chain that saturates and stops.
    Rng rng(99);
    TriUnitaryParams p;
    p.phi = {0.0, 0.0, 2.1};
    p.u = {haar_su2(rng), haar_su2(rng), haar_su2(rng)};
    p.v = {haar_su2(rng), QubitOp::Identity(), haar_su2(rng)};
    p.w = {haar_su2(rng), haar_su2(rng), haar_su2(rng)};
    // keep the decoupling: v2 arbitrary is fine, u2/w2 only dress site parity
    p.v[1] = haar_su2(rng);
    ChainCircuit c(16, Boundary::Periodic, triunitary_gate(p));
    ChainState psi = solvable_state(16);
    std::vector<double> s;
    for (int t = 1; t <= 6; ++t) {
        apply_half_layer(psi, c, half_layer_parity(t));
        s.push_back(entropy(psi, 0, 8, 2.0));
    }
    // growth stops at the even-sublattice maximum of 4 bits
    CHECK(s[1] == doctest::Approx(4.0).epsilon(1e-8));
    for (std::size_t k = 1; k < s.size(); ++k) CHECK(s[k] == doctest::Approx(4.0).epsilon(1e-8));
}

TEST_CASE("growth_experiment emits the full series") {
    auto src = [](std::uint64_t seed) { return random_tu(seed); };
    auto rows = growth_experiment(src, 12, Boundary::Periodic, 0, 6, 2, {1, 2}, 0.25);
    CHECK(rows.size() == 2 * 3);
    for (const auto& r : rows) {
        CHECK(r.phi == 0.25);
        if (r.t > 0) CHECK(r.s2_bits > 0.5);
    }
}
