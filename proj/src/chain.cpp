#include "triuni/chain.hpp"

#include <algorithm>
#include <cmath>

namespace triuni {

const Gate3& ChainCircuit::gate_at(int parity, int cell) const {
    auto it = overrides.find({parity, cell});
    return it == overrides.end() ? gate : it->second;
}

std::vector<std::array<int, 3>> ChainCircuit::cells(int parity) const {
    std::vector<std::array<int, 3>> out;
    for (int x = 2 * parity; x < L; x += 4) {
        if (boundary == Boundary::Open && x + 2 >= L) continue;
        out.push_back({x, (x + 1) % L, (x + 2) % L});
    }
    return out;
}

void apply_half_layer(ChainState& state, const ChainCircuit& c, int parity) {
    int cell = 0;
    for (const auto& sites : c.cells(parity)) {
        apply_gate(state, c.gate_at(parity, cell), {sites[0], sites[1], sites[2]});
        ++cell;
    }
}

void conjugate_half_layer(Mat& op, const ChainCircuit& c, int parity) {
    int cell = 0;
    for (const auto& sites : c.cells(parity)) {
        conjugate_sites(op, c.gate_at(parity, cell), {sites[0], sites[1], sites[2]}, c.L);
        ++cell;
    }
}

Mat dense_half_layer(const ChainCircuit& c, int parity) {
    if (c.L > 12) throw resource_error("dense_half_layer: need L <= 12");
    Mat u = Mat::Identity(Eigen::Index(1) << c.L, Eigen::Index(1) << c.L);
    int cell = 0;
    for (const auto& sites : c.cells(parity)) {
        apply_left(u, c.gate_at(parity, cell), {sites[0], sites[1], sites[2]}, c.L);
        ++cell;
    }
    return u;
}

Mat evolution_operator(const ChainCircuit& c, int t) {
    if (c.L > 12) throw resource_error("evolution_operator: need L <= 12");
    Mat u = Mat::Identity(Eigen::Index(1) << c.L, Eigen::Index(1) << c.L);
    for (int k = 1; k <= t; ++k) {
        const int parity = half_layer_parity(k);
        int cell = 0;
        for (const auto& sites : c.cells(parity))
            apply_left(u, c.gate_at(parity, cell++), {sites[0], sites[1], sites[2]}, c.L);
    }
    return u;
}

Mat heisenberg_operator(const ChainCircuit& c, const QubitOp& a, int site, int t) {
    if (c.L > 12) throw resource_error("heisenberg_operator: need L <= 12");
    if (site < 0 || site >= c.L) throw validation_error("heisenberg_operator: site out of range");
    Mat op = embed(a, {site}, c.L);
    // a(t) = (H_t ... H_1)† a (H_t ... H_1), built outside-in.
    for (int k = t; k >= 1; --k) conjugate_half_layer(op, c, half_layer_parity(k));
    return op;
}

namespace {

void require_traceless_normalized(const QubitOp& a, const char* who) {
    if (std::abs(a.trace()) > 1e-12)
        throw validation_error(std::string(who) + ": operator must be traceless");
    if (std::abs((a.adjoint() * a).trace().real() - 2.0) > 1e-10)
        throw validation_error(std::string(who) + ": operator must satisfy Tr(a†a) = 2");
}

void check_window(const ChainCircuit& c, int t, bool allow_wrap) {
    if (t < 0) throw validation_error("correlator: need t >= 0");
    if (c.boundary == Boundary::Periodic && 4 * t + 1 > c.L && !allow_wrap)
        throw validation_error("correlator: t outside the wrap-free window 4t+1 <= L");
}

} // namespace

Complex heisenberg_correlator(const ChainCircuit& c, const QubitOp& a, int anchor,
                              const QubitOp& b, int x, int t, bool allow_wrap) {
    require_traceless_normalized(a, "heisenberg_correlator");
    require_traceless_normalized(b, "heisenberg_correlator");
    check_window(c, t, allow_wrap);
    const int site_b = ((anchor + x) % c.L + c.L) % c.L;
    Mat at = heisenberg_operator(c, a, anchor, t);
    return trace_with_site_op(at, b, site_b, c.L) / static_cast<double>(std::size_t{1} << c.L);
}

double CorrelationGrid::max_offray_abs() const {
    double m = 0;
    for (const auto& e : entries)
        if (!e.on_ray) m = std::max(m, std::abs(e.value));
    return m;
}

double CorrelationGrid::max_onray_abs() const {
    double m = 0;
    for (const auto& e : entries)
        if (e.on_ray) m = std::max(m, std::abs(e.value));
    return m;
}

namespace {

/*
 * C(x,t) = 2^-L Tr(U† a U b) is evaluated from the dense evolution
 * operator via column inner products: with P = a U and B the embedded
 * probe, Tr(U† P B) = sum_j sum_beta b(beta, beta_j) <U.col(j), P.col(j_beta)>,
 * where j_beta sets the probe-site bit of j to beta. The diagonal part
 * (beta = beta_j) reuses one vector of dots for every probe site.
 */
struct FastAnchor {
    const Mat* u = nullptr;
    Mat p;  // a U
    Vec diag_dots;
    bool has_diag = false;

    FastAnchor(const Mat& evo, const QubitOp& a, int anchor, int L) : u(&evo), p(evo) {
        apply_left(p, a, {anchor}, L);
    }

    Complex value(const QubitOp& b, int site, int L) {
        const std::size_t dim = std::size_t{1} << L;
        const std::size_t mask = std::size_t{1} << (L - 1 - site);
        Complex total = 0;
        if (b(0, 0) != Complex(0, 0) || b(1, 1) != Complex(0, 0)) {
            if (!has_diag) {
                diag_dots = column_dots(*u, p, -1, L);
                has_diag = true;
            }
            for (std::size_t j = 0; j < dim; ++j)
                total += b((j & mask) ? 1 : 0, (j & mask) ? 1 : 0) * diag_dots(j);
        }
        if (b(0, 1) != Complex(0, 0) || b(1, 0) != Complex(0, 0)) {
            Vec flip = column_dots(*u, p, site, L);
            for (std::size_t j = 0; j < dim; ++j) {
                const int bj = (j & mask) ? 1 : 0;
                total += b(1 - bj, bj) * flip(j);
            }
        }
        return total / static_cast<double>(dim);
    }
};

} // namespace

CorrelationGrid correlation_grid(const ChainCircuit& c, const QubitOp& a, const QubitOp& b,
                                 int t_max, bool allow_wrap) {
    require_traceless_normalized(a, "correlation_grid");
    require_traceless_normalized(b, "correlation_grid");
    check_window(c, t_max, allow_wrap);

    CorrelationGrid grid;
    grid.L = c.L;
    grid.boundary = c.boundary;
    grid.t_max = t_max;

    const int xlo = (c.boundary == Boundary::Periodic) ? -(c.L / 2 - 1) : 0;
    const int xhi = (c.boundary == Boundary::Periodic) ? c.L / 2 : c.L - 1;

    Mat evo = evolution_operator(c, 0);
    for (int t = 1; t <= t_max; ++t) {
        const int parity = half_layer_parity(t);
        int cell = 0;
        for (const auto& sites : c.cells(parity))
            apply_left(evo, c.gate_at(parity, cell++), {sites[0], sites[1], sites[2]}, c.L);

        for (int anchor = 0; anchor < 4 && anchor < c.L; ++anchor) {
            FastAnchor fa(evo, a, anchor, c.L);
            for (int x = xlo; x <= xhi; ++x) {
                const int site_b =
                    (c.boundary == Boundary::Periodic) ? ((anchor + x) % c.L + c.L) % c.L : x;
                if (c.boundary == Boundary::Open && (site_b < 0 || site_b >= c.L)) continue;
                GridEntry e;
                e.anchor = anchor;
                e.x = (c.boundary == Boundary::Periodic) ? x : x - anchor;
                e.t = t;
                e.value = fa.value(b, site_b, c.L);
                const int off = ((e.x % c.L) + c.L) % c.L;
                const int plus = ((2 * t) % c.L + c.L) % c.L;
                const int minus = ((-2 * t) % c.L + c.L) % c.L;
                e.on_ray = (off == 0) || (off == plus) || (off == minus);
                grid.entries.push_back(e);
            }
        }
    }
    return grid;
}

double RayMatchReport::max_abs_diff(Direction mu) const {
    double m = 0;
    for (const auto& e : entries)
        if (e.mu == mu) m = std::max(m, std::abs(e.brute - e.predicted));
    return m;
}

double RayMatchReport::max_abs_diff() const {
    double m = 0;
    for (const auto& e : entries) m = std::max(m, std::abs(e.brute - e.predicted));
    return m;
}

RayMatchReport ray_channel_match(const ChainCircuit& c, const std::vector<QubitOp>& as,
                                 const std::vector<QubitOp>& bs, int t_max) {
    if (!c.overrides.empty())
        throw validation_error("ray_channel_match: needs a spatially uniform Floquet circuit");
    for (const auto& a : as) require_traceless_normalized(a, "ray_channel_match");
    for (const auto& b : bs) require_traceless_normalized(b, "ray_channel_match");
    check_window(c, t_max, false);

    RayMatchReport rep;
    Mat evo = evolution_operator(c, 0);
    for (int t = 1; t <= t_max; ++t) {
        const int parity = half_layer_parity(t);
        int cell = 0;
        for (const auto& sites : c.cells(parity))
            apply_left(evo, c.gate_at(parity, cell++), {sites[0], sites[1], sites[2]}, c.L);

        for (int anchor = 0; anchor < 4; ++anchor) {
            Direction mu = Direction::Zero;
            int x = 0;
            if (anchor % 4 == 0) {
                mu = Direction::Plus;
                x = 2 * t;
            } else if (anchor % 4 == 2) {
                mu = Direction::Minus;
                x = -2 * t;
            }
            const int site_b = ((anchor + x) % c.L + c.L) % c.L;
            for (std::size_t ia = 0; ia < as.size(); ++ia) {
                FastAnchor fa(evo, as[ia], anchor, c.L);
                for (std::size_t ib = 0; ib < bs.size(); ++ib) {
                    RayMatchEntry e;
                    e.mu = mu;
                    e.anchor = anchor;
                    e.t = t;
                    e.a_index = static_cast<int>(ia);
                    e.b_index = static_cast<int>(ib);
                    e.brute = fa.value(bs[ib], site_b, c.L);
                    e.predicted = predicted_ray_correlator(c.gate, mu, as[ia], bs[ib], t, anchor);
                    rep.entries.push_back(e);
                }
            }
        }
    }
    return rep;
}

RayMatchReport ray_channel_match(const ChainCircuit& c, const QubitOp& a, const QubitOp& b,
                                 int t_max) {
    return ray_channel_match(c, std::vector<QubitOp>{a}, std::vector<QubitOp>{b}, t_max);
}

Mat floquet_power(const Mat& ufloquet, int periods) {
    if (periods < 1) throw validation_error("floquet_power: need periods >= 1");
    Mat u = ufloquet;
    for (int k = 1; k < periods; ++k) u = mult_parallel(u, ufloquet);
    return u;
}

std::vector<Complex> floquet_offsets(const Mat& upow, int L, const QubitOp& a, int anchor,
                                     const QubitOp& b) {
    require_traceless_normalized(a, "floquet_offsets");
    require_traceless_normalized(b, "floquet_offsets");
    FastAnchor fa(upow, a, anchor, L);
    std::vector<Complex> out(L);
    for (int site = 0; site < L; ++site) out[site] = fa.value(b, site, L);
    return out;
}

Complex floquet_correlator(const Mat& ufloquet, int L, const QubitOp& a, int anchor,
                           const QubitOp& b, int x, int periods) {
    Mat upow = floquet_power(ufloquet, periods);
    FastAnchor fa(upow, a, anchor, L);
    const int site_b = ((anchor + x) % L + L) % L;
    require_traceless_normalized(a, "floquet_correlator");
    require_traceless_normalized(b, "floquet_correlator");
    return fa.value(b, site_b, L);
}

} // namespace triuni
