#include "triuni/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace triuni {

SolvableLayout solvable_layout(int L, Boundary boundary) {
    if (L < 4) throw validation_error("solvable_layout: need L >= 4");
    if (boundary == Boundary::Periodic && L % 4 != 0)
        throw validation_error("solvable_layout: periodic boundaries need L multiple of 4");
    SolvableLayout lay;
    std::vector<bool> paired(L, false);
    for (int x = 0; x < L; x += 4) {
        const int a = x + 2, b = x + 4;
        if (boundary == Boundary::Periodic) {
            lay.pairs.emplace_back(a % L, b % L);
            paired[a % L] = paired[b % L] = true;
        } else if (b < L) {
            lay.pairs.emplace_back(a, b);
            paired[a] = paired[b] = true;
        }
    }
    for (int s = 0; s < L; ++s)
        if (!paired[s]) lay.product_sites.push_back(s);
    return lay;
}

ChainState solvable_state(int L, Boundary boundary) {
    auto lay = solvable_layout(L, boundary);
    ChainState psi = ChainState::basis(L, 0);
    // turn each |00> into (|00> + |11>)/sqrt(2)
    for (auto [a, b] : lay.pairs) {
        const std::size_t ma = std::size_t{1} << (L - 1 - a);
        const std::size_t mb = std::size_t{1} << (L - 1 - b);
        const std::size_t dim = std::size_t{1} << L;
        Vec next = Vec::Zero(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            if (psi.amps(i) == Complex(0, 0)) continue;
            next(i) += psi.amps(i) / std::numbers::sqrt2;
            next(i | ma | mb) += psi.amps(i) / std::numbers::sqrt2;
        }
        psi.amps.swap(next);
    }
    return psi;
}

Eigen::VectorXd entanglement_spectrum(const ChainState& state, int region_begin, int region_len) {
    const int L = state.L;
    if (region_len <= 0 || region_len >= L)
        throw validation_error("entanglement_spectrum: region must be a proper subset");
    const int small_len = std::min(region_len, L - region_len);
    if (small_len > 14) throw resource_error("entanglement_spectrum: smaller side exceeds 14 qubits");
    const int begin = (region_len <= L - region_len)
                          ? region_begin
                          : (region_begin + region_len) % L;  // complement, same spectrum

    // Gram matrix on the smaller side.
    std::vector<int> sites(small_len);
    for (int i = 0; i < small_len; ++i) sites[i] = (begin + i) % L;
    std::size_t mask_small = 0;
    for (int s : sites) mask_small |= std::size_t{1} << (L - 1 - s);

    const std::size_t da = std::size_t{1} << small_len;
    const std::size_t db = std::size_t{1} << (L - small_len);
    Mat m(da, db);
    const std::size_t dim = std::size_t{1} << L;
    std::vector<std::size_t> small_bit(small_len), rest_bit;
    for (int i = 0; i < small_len; ++i) small_bit[i] = std::size_t{1} << (L - 1 - sites[i]);
    for (int s = 0; s < L; ++s) {
        const std::size_t bit = std::size_t{1} << (L - 1 - s);
        if (!(mask_small & bit)) rest_bit.push_back(bit);
    }
    for (std::size_t i = 0; i < dim; ++i) {
        std::size_t r = 0, c = 0;
        for (int j = 0; j < small_len; ++j)
            if (i & small_bit[j]) r |= std::size_t{1} << (small_len - 1 - j);
        for (std::size_t j = 0; j < rest_bit.size(); ++j)
            if (i & rest_bit[j]) c |= std::size_t{1} << (rest_bit.size() - 1 - j);
        m(r, c) = state.amps(i);
    }

    Mat rho = m * m.adjoint();
    Eigen::SelfAdjointEigenSolver<Mat> es(rho);
    Eigen::VectorXd lam = es.eigenvalues().reverse();
    for (Eigen::Index i = 0; i < lam.size(); ++i) lam(i) = std::max(lam(i), 0.0);
    return lam;
}

double entropy_from_spectrum(const Eigen::VectorXd& lam, double n) {
    if (n < 1.0) throw validation_error("entropy: need Renyi index n >= 1");
    constexpr double eps = 1e-15;
    if (std::abs(n - 1.0) < 1e-12) {
        double s = 0;
        for (double v : lam)
            if (v > eps) s -= v * std::log2(v);
        return s;
    }
    double p = 0;
    for (double v : lam)
        if (v > eps) p += std::pow(v, n);
    return std::log2(p) / (1.0 - n);
}

double entropy(const ChainState& state, int region_begin, int region_len, double n) {
    return entropy_from_spectrum(entanglement_spectrum(state, region_begin, region_len), n);
}

double flatness_from_spectrum(const Eigen::VectorXd& lam) {
    const double s2 = entropy_from_spectrum(lam, 2.0);
    const long rank = std::lround(std::pow(2.0, s2));
    const double scale = static_cast<double>(rank);
    const double cutoff = 0.5 / scale;
    double worst = 0.0, below = 0.0;
    for (double v : lam) {
        if (v > cutoff)
            worst = std::max(worst, std::abs(v * scale - 1.0));
        else
            below += v;
    }
    return worst + below;
}

double spectrum_flatness(const ChainState& state, int region_begin, int region_len) {
    return flatness_from_spectrum(entanglement_spectrum(state, region_begin, region_len));
}

double page_value(int ell, int L) {
    if (ell < 1 || 2 * ell > L) throw validation_error("page_value: need 1 <= ell and 2 ell <= L");
    return ell - std::pow(2.0, 2 * ell - L - 1) / std::numbers::ln2;
}

bool cut_acted(const ChainCircuit& c, int cut_j, int parity) {
    const int L = c.L;
    cut_j = ((cut_j % L) + L) % L;
    for (const auto& sites : c.cells(parity)) {
        // gate spans cuts (x|x+1) and (x+1|x+2)
        const int x = sites[0];
        if (cut_j == x || cut_j == (x + 1) % L) return true;
    }
    return false;
}

namespace {

std::vector<int> region_cuts(const ChainCircuit& c, int region_begin, int region_len) {
    // cut index j means the bond between sites j and j+1
    std::vector<int> cuts;
    const int L = c.L;
    const int left = ((region_begin - 1) % L + L) % L;
    const int right = (region_begin + region_len - 1) % L;
    if (c.boundary == Boundary::Periodic) {
        cuts = {left, right};
    } else {
        if (region_begin > 0) cuts.push_back(left);
        if (region_begin + region_len < L) cuts.push_back(right);
    }
    return cuts;
}

} // namespace

int solvable_entropy_prediction(const ChainCircuit& c, int region_begin, int region_len, int t) {
    auto lay = solvable_layout(c.L, c.boundary);
    int s = 0;
    for (int cut : region_cuts(c, region_begin, region_len)) {
        if (t == 0) {
            for (auto [a, b] : lay.pairs) {
                // pair (4k+2, 4k+4) straddles cuts 4k+2 and 4k+3
                const int base = a;
                if (cut == base || cut == (base + 1) % c.L) s += 1;
            }
        } else {
            s += t + (cut_acted(c, cut, half_layer_parity(t)) ? 1 : 0);
        }
    }
    return s;
}

std::vector<int> swap_limit_positions(const ChainCircuit& c, int t) {
    std::vector<int> pos(c.L);
    for (int s = 0; s < c.L; ++s) pos[s] = s;
    for (int k = 1; k <= t; ++k) {
        for (const auto& sites : c.cells(half_layer_parity(k))) {
            for (auto& p : pos) {
                if (p == sites[0])
                    p = sites[2];
                else if (p == sites[2])
                    p = sites[0];
            }
        }
    }
    return pos;
}

int swap_limit_entropy(const ChainCircuit& c, int region_begin, int region_len, int t) {
    auto lay = solvable_layout(c.L, c.boundary);
    auto pos = swap_limit_positions(c, t);
    auto inside = [&](int site) {
        const int rel = ((site - region_begin) % c.L + c.L) % c.L;
        return rel < region_len;
    };
    int s = 0;
    for (auto [a, b] : lay.pairs) s += (inside(pos[a]) != inside(pos[b])) ? 1 : 0;
    return s;
}

std::vector<EntropyPoint> growth_experiment(
    const std::function<Gate3(std::uint64_t)>& gate_source, int L, Boundary boundary,
    int region_begin, int region_len, int t_max, const std::vector<std::uint64_t>& seeds,
    double phi_tag) {
    if (L > 22) throw resource_error("growth_experiment: need L <= 22");
    std::vector<EntropyPoint> out;
    for (auto seed : seeds) {
        ChainCircuit circuit(L, boundary, gate_source(seed));
        ChainState psi = solvable_state(L, boundary);
        for (int t = 0; t <= t_max; ++t) {
            if (t > 0) apply_half_layer(psi, circuit, half_layer_parity(t));
            auto lam = entanglement_spectrum(psi, region_begin, region_len);
            EntropyPoint p;
            p.t = t;
            p.seed = seed;
            p.phi = phi_tag;
            p.s2_bits = entropy_from_spectrum(lam, 2.0);
            p.s3_bits = entropy_from_spectrum(lam, 3.0);
            p.svn_bits = entropy_from_spectrum(lam, 1.0);
            p.flatness = flatness_from_spectrum(lam);
            out.push_back(p);
        }
    }
    return out;
}

} // namespace triuni
