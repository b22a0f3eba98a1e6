#include "triuni/kagome.hpp"

#include <algorithm>
#include <cmath>

namespace triuni {

namespace {

inline int imod(long v, int n) {
    const long r = v % n;
    return static_cast<int>(r < 0 ? r + n : r);
}

Gate3 swap13_gate() {
    Gate3 s = Gate3::Zero();
    for (int b1 = 0; b1 < 2; ++b1)
        for (int b2 = 0; b2 < 2; ++b2)
            for (int b3 = 0; b3 < 2; ++b3)
                s((b3 << 2) | (b2 << 1) | b1, (b1 << 2) | (b2 << 1) | b3) = 1.0;
    return s;
}

} // namespace

int KagomeCircuit::line_index(int type, int a, int b) const {
    long x = a, y = b;
    int i = 0, j = 0;
    switch (type) {
        case 0: {  // x-line (y, z); (y,z) ~ (y-n1, z) ~ (y+n2, z-n2)
            const int zc = imod(y, n2);
            const long yadj = x + (y - zc);
            i = imod(yadj, n1);
            j = zc;
            break;
        }
        case 1: {  // y-line (x, z); (x,z) ~ (x+n1, z) ~ (x, z-n2)
            i = imod(x, n1);
            j = imod(y, n2);
            break;
        }
        case 2: {  // z-line (x, y); (x,y) ~ (x+n1, y-n1) ~ (x, y+n2)
            const int xc = imod(x, n1);
            const long yadj = y + (x - xc);
            i = xc;
            j = imod(yadj, n2);
            break;
        }
        default: throw validation_error("line_index: bad type");
    }
    return type * n1 * n2 + i * n2 + j;
}

std::pair<int, int> KagomeCircuit::line_label(int q) const {
    const int r = q % (n1 * n2);
    return {r / n2, r % n2};
}

std::vector<std::array<int, 3>> KagomeCircuit::layer_gates(int k) const {
    std::vector<std::array<int, 3>> out;
    out.reserve(n1 * n2);
    for (int xc = 0; xc < n1; ++xc) {
        for (int yc = 0; yc < n2; ++yc) {
            const long z = static_cast<long>(k) - xc - yc;
            out.push_back({line_index(0, yc, static_cast<int>(z)),
                           line_index(1, xc, static_cast<int>(z)),
                           line_index(2, xc, yc)});
        }
    }
    return out;
}

int KagomeCircuit::ray_site(int q, int cycles) const {
    const int type = line_type(q);
    auto [a, b] = line_label(q);
    return line_index(type, a - cycles, b - cycles);
}

std::array<long, 2> KagomeCircuit::plane_position(int type, int a, int b, int cycles) const {
    // slice s = 3*cycles + 1/2; coordinates (2(x-y), 2(y-z)) doubled to
    // stay integral after inserting the half-integer axis coordinate
    const long s2 = 6L * cycles + 1;  // 2*s
    switch (type) {
        case 0: {  // x-line (y,z)=(a,b): point (s-y-z, y, z)
            return {s2 - 4L * a - 2L * b, 2L * (a - b)};
        }
        case 1: {  // y-line (x,z)=(a,b)
            return {4L * a + 2L * b - s2, s2 - 2L * a - 4L * b};
        }
        case 2: {  // z-line (x,y)=(a,b)
            return {2L * (a - b), 2L * a + 4L * b - s2};
        }
        default: throw validation_error("plane_position: bad type");
    }
}

KagomeCircuit build_kagome(int n1, int n2, const Gate3& gate, bool allow_wrap) {
    if (n1 < 1 || n2 < 1) throw validation_error("build_kagome: need n1, n2 >= 1");
    if (3 * n1 * n2 > 14)
        throw resource_error("build_kagome: register exceeds the dense bound 3*n1*n2 <= 14");
    if (unitarity_residual(gate) > 1e-8) throw validation_error("build_kagome: gate is not unitary");

    KagomeCircuit c;
    c.n1 = n1;
    c.n2 = n2;
    c.gate = gate;
    c.reg_gate = Gate3(swap13_gate() * gate);

    if (!allow_wrap) {
        for (int q : {c.line_index(0, 0, 0), c.line_index(1, 0, 0), c.line_index(2, 0, 0)})
            if (c.ray_site(q, 1) == q)
                throw validation_error("build_kagome: light cone wraps after one cycle");
    }

    // each layer must touch every line exactly once
    for (int k = 0; k < 3; ++k) {
        std::vector<int> seen(c.lines(), 0);
        for (const auto& g : c.layer_gates(k))
            for (int q : g) ++seen[q];
        for (int q = 0; q < c.lines(); ++q)
            if (seen[q] != 1) throw validation_error("build_kagome: inconsistent layer table");
    }
    return c;
}

void apply_layer(ChainState& reg, const KagomeCircuit& c, int k) {
    if (reg.L != c.lines()) throw validation_error("apply_layer: register size mismatch");
    for (const auto& g : c.layer_gates(k))
        apply_gate(reg, c.reg_gate, {g[0], g[1], g[2]});
}

void floquet_cycle(ChainState& reg, const KagomeCircuit& c, int cycle_index) {
    for (int j = 0; j < 3; ++j) apply_layer(reg, c, 3 * cycle_index + j);
}

namespace {

void check_corr_inputs(const KagomeCircuit& c, const QubitOp& a, const QubitOp& b, int anchor_q,
                       int cycles) {
    if (std::abs(a.trace()) > 1e-12 || std::abs(b.trace()) > 1e-12)
        throw validation_error("correlator_2d: operators must be traceless");
    for (int n = 1; n <= cycles; ++n)
        if (c.ray_site(anchor_q, n) == anchor_q)
            throw validation_error("correlator_2d: window wraps; reduce cycles");
}

// Heisenberg image of a after `cycles` full cycles in the register.
Mat heisenberg_2d(const KagomeCircuit& c, const QubitOp& a, int anchor_q, int cycles) {
    const int N = c.lines();
    Mat at = embed(a, {anchor_q}, N);
    // a(t) = W† a W with W = U_{3c-1} ... U_0, conjugating outside-in
    for (int k = 3 * cycles - 1; k >= 0; --k)
        for (const auto& g : c.layer_gates(k)) conjugate_sites(at, c.reg_gate, {g[0], g[1], g[2]}, N);
    return at;
}

// register qubit occupying the phase-0 site labelled site_q at cycle n
int occupant_of(const KagomeCircuit& c, int site_q, int cycles) {
    const int type = c.line_type(site_q);
    auto [sa, sb] = c.line_label(site_q);
    return c.line_index(type, sa + cycles, sb + cycles);
}

} // namespace

Complex correlator_2d(const KagomeCircuit& c, const QubitOp& a, int anchor_q, const QubitOp& b,
                      int site_q, int cycles) {
    check_corr_inputs(c, a, b, anchor_q, cycles);
    const int N = c.lines();
    Mat at = heisenberg_2d(c, a, anchor_q, cycles);
    return trace_with_site_op(at, b, occupant_of(c, site_q, cycles), N) /
           static_cast<double>(std::size_t{1} << N);
}

std::vector<Kagome2DEntry> kagome_correlation_grid(const KagomeCircuit& c, const QubitOp& a,
                                                   const QubitOp& b, int cycles) {
    const int N = c.lines();
    const double norm = static_cast<double>(std::size_t{1} << N);
    std::vector<Kagome2DEntry> out;
    for (int type = 0; type < 3; ++type) {
        const int anchor = c.line_index(type, 0, 0);
        check_corr_inputs(c, a, b, anchor, cycles);
        const int ray = c.ray_site(anchor, cycles);
        Mat at = heisenberg_2d(c, a, anchor, cycles);
        for (int site = 0; site < c.lines(); ++site) {
            Kagome2DEntry e;
            e.anchor_q = anchor;
            e.site_q = site;
            e.cycles = cycles;
            e.value = trace_with_site_op(at, b, occupant_of(c, site, cycles), N) / norm;
            e.on_ray = (site == ray);
            out.push_back(e);
        }
    }
    return out;
}

Mat march_permutation(const KagomeCircuit& c) {
    const int N = c.lines();
    const std::size_t dim = std::size_t{1} << N;
    // permutation of qubit slots: content of slot q moves to slot ray_site(q,1)
    std::vector<int> dest(N);
    for (int q = 0; q < N; ++q) dest[q] = c.ray_site(q, 1);
    Mat p = Mat::Zero(dim, dim);
    for (std::size_t s = 0; s < dim; ++s) {
        std::size_t img = 0;
        for (int q = 0; q < N; ++q)
            if (s & (std::size_t{1} << (N - 1 - q))) img |= std::size_t{1} << (N - 1 - dest[q]);
        p(img, s) = 1.0;
    }
    return p;
}

Mat register_cycle(const KagomeCircuit& c, int cycle_index) {
    const int N = c.lines();
    Mat u = Mat::Identity(Eigen::Index(1) << N, Eigen::Index(1) << N);
    for (int j = 0; j < 3; ++j)
        for (const auto& g : c.layer_gates(3 * cycle_index + j))
            apply_left(u, c.reg_gate, {g[0], g[1], g[2]}, N);
    return u;
}

ExplicitCycleReport explicit_cycle(const KagomeCircuit& c, int cycle_index) {
    const int N = c.lines();
    const int P = 3 * N;  // physical qubits: phases 0,1,2
    if (P > 18) throw resource_error("explicit_cycle: physical array exceeds 18 qubits");

    // physical site (phase p, slot d): the position line (d + (n,n))
    // occupies at phase p of cycle n; swap partners are (p,d)<->(p+1,d)
    // within a cycle and (2,d)<->(0, d-(1,1)) into the next one.
    auto phys = [&](int p, int d) { return p * N + d; };
    Mat swap2 = Mat::Zero(4, 4);
    swap2(0, 0) = swap2(3, 3) = swap2(1, 2) = swap2(2, 1) = 1.0;

    auto run_cycle = [&](ChainState& psi) {
        for (int j = 0; j < 3; ++j) {
            const int k = 3 * cycle_index + j;
            // slot of line q at this cycle: d with q = d + (n,n)
            auto slot_of = [&](int q) {
                const int type = c.line_type(q);
                auto [a, b] = c.line_label(q);
                return c.line_index(type, a - cycle_index, b - cycle_index);
            };
            for (const auto& g : c.layer_gates(k))
                apply_gate(psi, c.reg_gate, {phys(j, slot_of(g[0])), phys(j, slot_of(g[1])),
                                             phys(j, slot_of(g[2]))});
            for (int d = 0; d < N; ++d) {
                if (j < 2) {
                    apply_gate(psi, swap2, {phys(j, d), phys(j + 1, d)});
                } else {
                    const int type = c.line_type(d);
                    auto [a, b] = c.line_label(d);
                    apply_gate(psi, swap2, {phys(2, d), phys(0, c.line_index(type, a - 1, b - 1))});
                }
            }
        }
    };

    ExplicitCycleReport rep;
    rep.system_block = Mat::Zero(Eigen::Index(1) << N, Eigen::Index(1) << N);
    const std::size_t sysdim = std::size_t{1} << N;
    for (std::size_t col = 0; col < sysdim; ++col) {
        ChainState psi = ChainState::basis(P, col << (P - N));  // system on phase-0 block
        run_cycle(psi);
        // read out the phase-0 block, ancillas back in |0>
        double outside = 0.0;
        for (std::size_t i = 0; i < (std::size_t{1} << P); ++i) {
            if (psi.amps(i) == Complex(0, 0)) continue;
            if (i & ((std::size_t{1} << (P - N)) - 1))
                outside += std::norm(psi.amps(i));
            else
                rep.system_block(i >> (P - N), col) = psi.amps(i);
        }
        rep.ancilla_return_deficit = std::max(rep.ancilla_return_deficit, outside);
    }
    return rep;
}

} // namespace triuni
