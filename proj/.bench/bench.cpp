#include <chrono>
#include <cstdio>
#include "triuni/chain.hpp"
#include "triuni/gates.hpp"
using namespace triuni;
int main() {
    Rng rng(1);
    ChainCircuit c(12, Boundary::Periodic, triunitary_gate(TriUnitaryParams::random(rng)));
    Mat op = embed(pauli::Z(), {0}, 12);
    auto t0 = std::chrono::steady_clock::now();
    conjugate_half_layer(op, c, 0);
    auto t1 = std::chrono::steady_clock::now();
    std::printf("half-layer conj (L=12): %.3f s\n",
                std::chrono::duration<double>(t1 - t0).count());
    auto t2 = std::chrono::steady_clock::now();
    Mat at = heisenberg_operator(c, pauli::Z(), 0, 2);
    auto t3 = std::chrono::steady_clock::now();
    std::printf("heisenberg t=2: %.3f s\n", std::chrono::duration<double>(t3 - t2).count());
    return 0;
}
