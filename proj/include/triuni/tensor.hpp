#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "triuni/errors.hpp"

namespace triuni {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

/// One-qubit operator.
using QubitOp = Eigen::Matrix2cd;
/// Two-qubit gate, 4x4.
using Gate2 = Eigen::Matrix4cd;
/// Three-qubit gate, 8x8. See the leg convention below.
using Gate3 = Eigen::Matrix<Complex, 8, 8>;

/*
 * Leg convention for three-qubit gates
 * ------------------------------------
 * A Gate3 stores the plain 8x8 matrix of a three-qubit operator.
 * Input legs (a1,a2,a3) are qubits 1,2,3 read left to right; output
 * legs (a4,a5,a6) are the same qubits after the gate, so a4 sits
 * directly above a1, a5 above a2, a6 above a3. Indices linearize
 * row-major with a1 (resp. a4) the most significant bit:
 *
 *     col = 4*a1 + 2*a2 + a3,   row = 4*a4 + 2*a5 + a6,
 *     U(row, col) = U^{a4 a5 a6}_{a1 a2 a3}.
 *
 * Every index computation in the library goes through this one
 * bijection. When a gate is applied to a chain at sites (s1,s2,s3),
 * gate qubit k acts on site s_k, and site 0 is the most significant
 * bit of the state index.
 */

/// Rotations of the arrow of time for a Gate3, as pure index
/// permutations of the rank-6 tensor:
///
///   Tilde:  U~^{a5 a6 a3}_{a4 a1 a2} = U^{a4 a5 a6}_{a1 a2 a3}
///   Breve:  U˘^{a6 a3 a2}_{a5 a4 a1} = U^{a4 a5 a6}_{a1 a2 a3}
///
/// Breve equals Tilde applied twice; Breve applied three times is the
/// identity on tensors.
enum class Rotation { Tilde, Breve };

Gate3 reshuffle(const Gate3& g, Rotation r);

/// Spacetime dual of a two-qubit gate:
/// U~[(o1,o2),(i1,i2)] = U[(i2,o2),(i1,o1)].
Gate2 dual(const Gate2& g);

/// ||M M† - 1||_F, the Frobenius deviation from unitarity.
double unitarity_residual(const Mat& m);

namespace pauli {
// Fixed basis order (I, X, Y, Z) used everywhere channels appear.
const QubitOp& I();
const QubitOp& X();
const QubitOp& Y();
const QubitOp& Z();
/// sigma(0)=I, sigma(1)=X, sigma(2)=Y, sigma(3)=Z.
const QubitOp& sigma(int alpha);
} // namespace pauli

/// Kronecker product, first factor most significant.
template <typename DA, typename DB>
Mat kron(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

template <typename DA, typename DB, typename DC>
Mat kron(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b,
         const Eigen::MatrixBase<DC>& c) {
    return kron(a, kron(b, c));
}

/// Embed a k-qubit operator acting on `sites` of an n-qubit register.
Mat embed(const Mat& op, const std::vector<int>& sites, int n);

/// Partial trace of a dense operator on n qubits, keeping `keep`
/// (site indices, ascending output order). Rejects keep sets that are
/// not a subset of 0..n-1.
Mat partial_trace(const Mat& op, const std::vector<int>& keep, int n);

/// Dense state on a chain of L qubits. Site 0 is the most significant
/// bit of the amplitude index.
struct ChainState {
    int L = 0;
    Vec amps;

    static ChainState basis(int L, std::uint64_t index);
    double norm() const { return amps.norm(); }
};

/// Apply a 2^k x 2^k gate to the given sites of a state (k = 1,2,3).
/// Sites must be distinct and in range.
void apply_gate(ChainState& state, const Mat& gate, const std::vector<int>& sites);

/// Same, acting on a dense operator: op <- G op on the row side
/// (apply_left) or op <- op G on the column side (apply_right).
void apply_left(Mat& op, const Mat& gate, const std::vector<int>& sites, int L);
void apply_right(Mat& op, const Mat& gate, const std::vector<int>& sites, int L);

/// op <- G† op G acting on the given sites.
void conjugate_sites(Mat& op, const Mat& gate, const std::vector<int>& sites, int L);

/// Tr(op . b_site) for a one-qubit b, without embedding it.
Complex trace_with_site_op(const Mat& op, const QubitOp& b, int site, int L);

/// a * b with the columns of the product split across worker threads.
Mat mult_parallel(const Mat& a, const Mat& b);

/// Column inner products d(j) = <u.col(j), p.col(j ^ flip)> with the
/// flip applied to the site bit (flip_site < 0 means no flip).
Vec column_dots(const Mat& u, const Mat& p, int flip_site, int L);

} // namespace triuni
