#include "triuni/tensor.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <thread>

namespace triuni {

namespace {

int pool_size() {
    static const int n = [] {
        if (const char* env = std::getenv("TRIUNI_WORKERS")) {
            const long v = std::strtol(env, nullptr, 10);
            if (v >= 1) return static_cast<int>(v);
        }
        const unsigned hw = std::thread::hardware_concurrency();
        return hw == 0 ? 1 : static_cast<int>(hw);
    }();
    return n;
}

// Chunked parallel loop. The chunk decomposition is fixed so results
// assembled per chunk do not depend on the worker count.
template <typename Body>
void parallel_chunks(std::size_t count, Body&& body) {
    const int workers = std::min<std::size_t>(pool_size(), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = static_cast<std::size_t>(w); i < count;
                 i += static_cast<std::size_t>(workers))
                body(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace

namespace {

// Decompose a 3-bit index into legs (b1,b2,b3), b1 most significant.
inline std::array<int, 3> bits3(int idx) {
    return {(idx >> 2) & 1, (idx >> 1) & 1, idx & 1};
}
inline int idx3(int b1, int b2, int b3) { return (b1 << 2) | (b2 << 1) | b3; }

} // namespace

Gate3 reshuffle(const Gate3& g, Rotation r) {
    Gate3 out;
    for (int row = 0; row < 8; ++row) {
        auto [a4, a5, a6] = bits3(row);
        for (int col = 0; col < 8; ++col) {
            auto [a1, a2, a3] = bits3(col);
            if (r == Rotation::Tilde) {
                // inputs (a4,a1,a2) -> outputs (a5,a6,a3)
                out(idx3(a5, a6, a3), idx3(a4, a1, a2)) = g(row, col);
            } else {
                // inputs (a5,a4,a1) -> outputs (a6,a3,a2)
                out(idx3(a6, a3, a2), idx3(a5, a4, a1)) = g(row, col);
            }
        }
    }
    return out;
}

Gate2 dual(const Gate2& g) {
    Gate2 out;
    for (int i1 = 0; i1 < 2; ++i1)
        for (int i2 = 0; i2 < 2; ++i2)
            for (int o1 = 0; o1 < 2; ++o1)
                for (int o2 = 0; o2 < 2; ++o2)
                    out(2 * o1 + o2, 2 * i1 + i2) = g(2 * i2 + o2, 2 * i1 + o1);
    return out;
}

double unitarity_residual(const Mat& m) {
    if (m.rows() != m.cols()) throw validation_error("unitarity_residual: matrix not square");
    Mat d = m * m.adjoint();
    d.diagonal().array() -= Complex(1.0, 0.0);
    return d.norm();
}

namespace pauli {

const QubitOp& I() {
    static const QubitOp m = QubitOp::Identity();
    return m;
}
const QubitOp& X() {
    static const QubitOp m = (QubitOp() << 0, 1, 1, 0).finished();
    return m;
}
const QubitOp& Y() {
    static const QubitOp m =
        (QubitOp() << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0)).finished();
    return m;
}
const QubitOp& Z() {
    static const QubitOp m = (QubitOp() << 1, 0, 0, -1).finished();
    return m;
}
const QubitOp& sigma(int alpha) {
    switch (alpha) {
        case 0: return I();
        case 1: return X();
        case 2: return Y();
        case 3: return Z();
        default: throw validation_error("pauli::sigma: index out of range");
    }
}

} // namespace pauli

Mat embed(const Mat& op, const std::vector<int>& sites, int n) {
    const int k = static_cast<int>(sites.size());
    if (op.rows() != (1 << k) || op.cols() != (1 << k))
        throw validation_error("embed: operator size does not match site count");
    for (int s : sites)
        if (s < 0 || s >= n) throw validation_error("embed: site out of range");

    const std::size_t dim = std::size_t{1} << n;
    Mat out = Mat::Zero(dim, dim);
    // Iterate over configurations of the untouched qubits and scatter op.
    std::vector<int> rest;
    for (int s = 0; s < n; ++s)
        if (std::find(sites.begin(), sites.end(), s) == sites.end()) rest.push_back(s);

    auto bit_of = [n](int site) { return n - 1 - site; };
    const std::size_t nrest = std::size_t{1} << rest.size();
    for (std::size_t r = 0; r < nrest; ++r) {
        std::size_t base = 0;
        for (std::size_t j = 0; j < rest.size(); ++j)
            if ((r >> j) & 1) base |= std::size_t{1} << bit_of(rest[j]);
        for (int a = 0; a < (1 << k); ++a) {
            std::size_t row = base;
            for (int j = 0; j < k; ++j)
                if ((a >> (k - 1 - j)) & 1) row |= std::size_t{1} << bit_of(sites[j]);
            for (int b = 0; b < (1 << k); ++b) {
                if (op(a, b) == Complex(0, 0)) continue;
                std::size_t col = base;
                for (int j = 0; j < k; ++j)
                    if ((b >> (k - 1 - j)) & 1) col |= std::size_t{1} << bit_of(sites[j]);
                out(row, col) = op(a, b);
            }
        }
    }
    return out;
}

Mat partial_trace(const Mat& op, const std::vector<int>& keep, int n) {
    if (n < 1 || n > 14) throw resource_error("partial_trace: need 1 <= n <= 14 qubits");
    if (op.rows() != (Eigen::Index(1) << n) || op.cols() != op.rows())
        throw validation_error("partial_trace: operator size does not match qubit count");
    std::vector<int> k = keep;
    std::sort(k.begin(), k.end());
    if (std::adjacent_find(k.begin(), k.end()) != k.end())
        throw validation_error("partial_trace: repeated site in keep set");
    for (int s : k)
        if (s < 0 || s >= n) throw validation_error("partial_trace: keep set not a subset of sites");

    std::vector<int> traced;
    for (int s = 0; s < n; ++s)
        if (!std::binary_search(k.begin(), k.end(), s)) traced.push_back(s);

    auto bit_of = [n](int site) { return n - 1 - site; };
    const std::size_t dk = std::size_t{1} << k.size();
    const std::size_t dt = std::size_t{1} << traced.size();
    Mat out = Mat::Zero(dk, dk);
    for (std::size_t a = 0; a < dk; ++a) {
        std::size_t abits = 0;
        for (std::size_t j = 0; j < k.size(); ++j)
            if ((a >> (k.size() - 1 - j)) & 1) abits |= std::size_t{1} << bit_of(k[j]);
        for (std::size_t b = 0; b < dk; ++b) {
            std::size_t bbits = 0;
            for (std::size_t j = 0; j < k.size(); ++j)
                if ((b >> (k.size() - 1 - j)) & 1) bbits |= std::size_t{1} << bit_of(k[j]);
            Complex acc = 0;
            for (std::size_t t = 0; t < dt; ++t) {
                std::size_t tbits = 0;
                for (std::size_t j = 0; j < traced.size(); ++j)
                    if ((t >> j) & 1) tbits |= std::size_t{1} << bit_of(traced[j]);
                acc += op(abits | tbits, bbits | tbits);
            }
            out(a, b) = acc;
        }
    }
    return out;
}

ChainState ChainState::basis(int L, std::uint64_t index) {
    if (L < 1 || L > 26) throw resource_error("ChainState: need 1 <= L <= 26");
    ChainState s;
    s.L = L;
    s.amps = Vec::Zero(Eigen::Index(1) << L);
    s.amps(static_cast<Eigen::Index>(index)) = 1.0;
    return s;
}

namespace {

void check_sites(const std::vector<int>& sites, int L, Eigen::Index gate_dim) {
    const int k = static_cast<int>(sites.size());
    if (gate_dim != (Eigen::Index(1) << k))
        throw validation_error("apply_gate: gate size does not match site count");
    for (int s : sites)
        if (s < 0 || s >= L) throw validation_error("apply_gate: site out of range");
    std::vector<int> u = sites;
    std::sort(u.begin(), u.end());
    if (std::adjacent_find(u.begin(), u.end()) != u.end())
        throw validation_error("apply_gate: repeated site");
}

// Enumerate the 2^(L-k) base indices with all gate bits cleared, and the
// bit masks of the gate sites (gate qubit j <-> mask[j]).
struct SiteMasks {
    std::vector<std::size_t> masks;   // per gate qubit, MSB-first order
    std::size_t gate_bits = 0;
};

SiteMasks site_masks(const std::vector<int>& sites, int L) {
    SiteMasks sm;
    for (int s : sites) {
        std::size_t m = std::size_t{1} << (L - 1 - s);
        sm.masks.push_back(m);
        sm.gate_bits |= m;
    }
    return sm;
}

} // namespace

void apply_gate(ChainState& state, const Mat& gate, const std::vector<int>& sites) {
    check_sites(sites, state.L, gate.rows());
    const int k = static_cast<int>(sites.size());
    const auto sm = site_masks(sites, state.L);
    const std::size_t dim = std::size_t{1} << state.L;
    const int sub = 1 << k;

    std::vector<std::size_t> offset(sub);
    for (int a = 0; a < sub; ++a) {
        std::size_t o = 0;
        for (int j = 0; j < k; ++j)
            if ((a >> (k - 1 - j)) & 1) o |= sm.masks[j];
        offset[a] = o;
    }

    Eigen::VectorXcd in(sub), out(sub);
    for (std::size_t base = 0; base < dim; ++base) {
        if (base & sm.gate_bits) continue;
        for (int a = 0; a < sub; ++a) in(a) = state.amps(base | offset[a]);
        out.noalias() = gate * in;
        for (int a = 0; a < sub; ++a) state.amps(base | offset[a]) = out(a);
    }
}

namespace {

std::vector<std::size_t> gate_offsets(const SiteMasks& sm, int k) {
    const int sub = 1 << k;
    std::vector<std::size_t> offset(sub);
    for (int a = 0; a < sub; ++a) {
        std::size_t o = 0;
        for (int j = 0; j < k; ++j)
            if ((a >> (k - 1 - j)) & 1) o |= sm.masks[j];
        offset[a] = o;
    }
    return offset;
}

std::vector<std::size_t> free_bases(const SiteMasks& sm, int L, int k) {
    std::vector<std::size_t> bases;
    bases.reserve(std::size_t{1} << (L - k));
    const std::size_t dim = std::size_t{1} << L;
    for (std::size_t b = 0; b < dim; ++b)
        if (!(b & sm.gate_bits)) bases.push_back(b);
    return bases;
}

} // namespace

namespace {

// op <- G . op for a fixed gate size: columns are independent; within a
// column the gate mixes strided row groups that stay inside the cached
// column. Columns are processed in blocks of four to amortize gathers.
template <int Sub>
void apply_left_fixed(Mat& op, const Mat& gate, const std::vector<std::size_t>& offset,
                      const std::vector<std::size_t>& bases) {
    const std::size_t dim = static_cast<std::size_t>(op.rows());
    const Eigen::Matrix<Complex, Sub, Sub> g = gate;
    const std::size_t nblocks = (dim + 3) / 4;
    parallel_chunks(nblocks, [&](std::size_t blk) {
        const std::size_t c0 = blk * 4;
        const int ncols = static_cast<int>(std::min<std::size_t>(4, dim - c0));
        Complex* colp[4];
        for (int c = 0; c < ncols; ++c) colp[c] = op.data() + (c0 + c) * dim;
        Eigen::Matrix<Complex, Sub, 4> x, y;
        for (const std::size_t base : bases) {
            for (int c = 0; c < ncols; ++c)
                for (int a = 0; a < Sub; ++a) x(a, c) = colp[c][base | offset[a]];
            y.template leftCols<4>().noalias() = g * x;
            for (int c = 0; c < ncols; ++c)
                for (int a = 0; a < Sub; ++a) colp[c][base | offset[a]] = y(a, c);
        }
    });
}

} // namespace

void apply_left(Mat& op, const Mat& gate, const std::vector<int>& sites, int L) {
    check_sites(sites, L, gate.rows());
    const int k = static_cast<int>(sites.size());
    const auto sm = site_masks(sites, L);
    const auto offset = gate_offsets(sm, k);
    const auto bases = free_bases(sm, L, k);
    switch (k) {
        case 1: apply_left_fixed<2>(op, gate, offset, bases); break;
        case 2: apply_left_fixed<4>(op, gate, offset, bases); break;
        case 3: apply_left_fixed<8>(op, gate, offset, bases); break;
        default: throw validation_error("apply_left: gates act on 1 to 3 qubits");
    }
}

namespace {

// op <- op . G: row chunks are independent; the touched columns are
// loaded as contiguous segments and hit with one fixed-size gemm.
template <int Sub>
void apply_right_fixed(Mat& op, const Mat& gate, const std::vector<std::size_t>& offset,
                       const std::vector<std::size_t>& bases) {
    const std::size_t dim = static_cast<std::size_t>(op.rows());
    constexpr std::size_t kChunk = 256;
    const Eigen::Matrix<Complex, Sub, Sub> g = gate;
    const std::size_t nchunks = (dim + kChunk - 1) / kChunk;
    parallel_chunks(nchunks, [&](std::size_t chunk) {
        const std::size_t r0 = chunk * kChunk;
        const std::size_t rows = std::min(kChunk, dim - r0);
        Eigen::Matrix<Complex, Eigen::Dynamic, Sub> panel(rows, Sub), prod(rows, Sub);
        for (const std::size_t base : bases) {
            for (int a = 0; a < Sub; ++a)
                panel.col(a) =
                    Eigen::Map<const Vec>(op.data() + (base | offset[a]) * dim + r0, rows);
            prod.noalias() = panel * g;
            for (int a = 0; a < Sub; ++a)
                Eigen::Map<Vec>(op.data() + (base | offset[a]) * dim + r0, rows) = prod.col(a);
        }
    });
}

} // namespace

void apply_right(Mat& op, const Mat& gate, const std::vector<int>& sites, int L) {
    check_sites(sites, L, gate.rows());
    const int k = static_cast<int>(sites.size());
    const auto sm = site_masks(sites, L);
    const auto offset = gate_offsets(sm, k);
    const auto bases = free_bases(sm, L, k);
    switch (k) {
        case 1: apply_right_fixed<2>(op, gate, offset, bases); break;
        case 2: apply_right_fixed<4>(op, gate, offset, bases); break;
        case 3: apply_right_fixed<8>(op, gate, offset, bases); break;
        default: throw validation_error("apply_right: gates act on 1 to 3 qubits");
    }
}

void conjugate_sites(Mat& op, const Mat& gate, const std::vector<int>& sites, int L) {
    apply_left(op, gate.adjoint(), sites, L);
    apply_right(op, gate, sites, L);
}

Mat mult_parallel(const Mat& a, const Mat& b) {
    if (a.cols() != b.rows()) throw validation_error("mult_parallel: shape mismatch");
    Mat out(a.rows(), b.cols());
    constexpr Eigen::Index kChunk = 64;
    const std::size_t nchunks = (b.cols() + kChunk - 1) / kChunk;
    parallel_chunks(nchunks, [&](std::size_t chunk) {
        const Eigen::Index c0 = static_cast<Eigen::Index>(chunk) * kChunk;
        const Eigen::Index w = std::min<Eigen::Index>(kChunk, b.cols() - c0);
        out.middleCols(c0, w).noalias() = a * b.middleCols(c0, w);
    });
    return out;
}

Vec column_dots(const Mat& u, const Mat& p, int flip_site, int L) {
    const std::size_t dim = std::size_t{1} << L;
    if (u.rows() != Eigen::Index(dim) || p.rows() != u.rows() || p.cols() != u.cols())
        throw validation_error("column_dots: shape mismatch");
    const std::size_t mask = flip_site >= 0 ? std::size_t{1} << (L - 1 - flip_site) : 0;
    Vec d(dim);
    constexpr std::size_t kChunk = 64;
    const std::size_t nchunks = (dim + kChunk - 1) / kChunk;
    parallel_chunks(nchunks, [&](std::size_t chunk) {
        const std::size_t j0 = chunk * kChunk;
        const std::size_t j1 = std::min(j0 + kChunk, dim);
        for (std::size_t j = j0; j < j1; ++j) d(j) = u.col(j).dot(p.col(j ^ mask));
    });
    return d;
}

Complex trace_with_site_op(const Mat& op, const QubitOp& b, int site, int L) {
    if (site < 0 || site >= L) throw validation_error("trace_with_site_op: site out of range");
    const std::size_t dim = std::size_t{1} << L;
    const std::size_t mask = std::size_t{1} << (L - 1 - site);
    constexpr std::size_t kChunk = 4096;
    const std::size_t nchunks = (dim + kChunk - 1) / kChunk;
    std::vector<Complex> partial(nchunks, Complex(0, 0));
    parallel_chunks(nchunks, [&](std::size_t chunk) {
        const std::size_t j0 = chunk * kChunk;
        const std::size_t j1 = std::min(j0 + kChunk, dim);
        Complex acc = 0;
        for (std::size_t j = j0; j < j1; ++j) {
            const Complex* colp = op.data() + j * dim;
            const int beta_j = (j & mask) ? 1 : 0;
            for (int beta_i = 0; beta_i < 2; ++beta_i) {
                const std::size_t i = beta_i ? (j | mask) : (j & ~mask);
                acc += colp[i] * b(beta_j, beta_i);
            }
        }
        partial[chunk] = acc;
    });
    Complex total = 0;
    for (const Complex& p : partial) total += p;  // fixed order, worker-independent
    return total;
}

} // namespace triuni
