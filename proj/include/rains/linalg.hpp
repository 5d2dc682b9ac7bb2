#pragma once

// Dense complex Hermitian linear algebra on small bipartite operators.
//
// Basis convention for bipartite operators: the product basis |i>_A |j>_B is
// ordered lexicographically, i.e. the row/column index is i * d_B + j.

#include <complex>
#include <functional>

#include <Eigen/Dense>

namespace rains {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Eigenvalue clamp used by matrix logarithms and support comparisons.
inline constexpr double kEigFloor = 1e-12;

// Relative Frobenius tolerance for ||M - M^dagger||.
inline constexpr double kHermitianTol = 1e-12;

struct BipartiteDims {
  int a = 1;
  int b = 1;

  int total() const { return a * b; }
  friend bool operator==(const BipartiteDims&, const BipartiteDims&) = default;
};

enum class Subsystem { A, B };

struct EigenDecomposition {
  RealVector values;      // ascending
  ComplexMatrix vectors;  // columns are the eigenvectors
};

// ||M - M^dagger||_F / max(1, ||M||_F).
double hermiticity_defect(const ComplexMatrix& m);

bool is_hermitian(const ComplexMatrix& m, double rel_tol = kHermitianTol);

ComplexMatrix hermitian_part(const ComplexMatrix& m);

// Throws SymmetryError when m is not Hermitian within rel_tol.
EigenDecomposition eig_hermitian(const ComplexMatrix& m, double rel_tol = kHermitianTol);

RealVector eigenvalues_hermitian(const ComplexMatrix& m, double rel_tol = kHermitianTol);

double min_eigenvalue(const ComplexMatrix& m, double rel_tol = kHermitianTol);

// V diag(f(lambda_i)) V^dagger.
ComplexMatrix apply_spectral(const EigenDecomposition& eig, const std::function<double(double)>& f);
ComplexMatrix apply_spectral(const ComplexMatrix& m, const std::function<double(double)>& f);

// Natural logarithm with eigenvalues clamped below at `floor`. Eigenvalues
// below -max(floor, 1e-10 * ||M||) are a DomainError.
ComplexMatrix matrix_log(const ComplexMatrix& m, double floor = kEigFloor);

ComplexMatrix matrix_exp_hermitian(const ComplexMatrix& h);

// First divided difference of the natural logarithm:
//   (ln a - ln b) / (a - b), with the diagonal value 1 / a.
double log_divided_difference(double a, double b);

// Frechet derivative of sigma -> Tr(rho ln sigma), as a Hermitian matrix G
// with d/dt Tr(rho ln(sigma + t X)) = Tr(G X) at t = 0. In the eigenbasis of
// sigma the entries are rho_ij * f(s_i, s_j). Kernel directions of sigma
// (eigenvalue <= floor) contribute nothing; rho having weight there is an
// InfiniteEntropyError.
ComplexMatrix dd_gradient(const ComplexMatrix& rho, const ComplexMatrix& sigma,
                          double floor = kEigFloor);
ComplexMatrix dd_gradient(const ComplexMatrix& rho, const EigenDecomposition& sigma_eig,
                          double floor = kEigFloor);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Transpose on the B factor: out[(i,l),(k,j)] = m[(i,j),(k,l)].
ComplexMatrix partial_transpose(const ComplexMatrix& m, BipartiteDims dims);

// Trace out `traced`; the result acts on the other factor.
ComplexMatrix partial_trace(const ComplexMatrix& m, BipartiteDims dims, Subsystem traced);

// Tensor product of two bipartite operators regrouped so that the result is
// bipartite over (A1 A2) | (B1 B2).
ComplexMatrix bipartite_kron(const ComplexMatrix& x, BipartiteDims dx,
                             const ComplexMatrix& y, BipartiteDims dy);

// Frobenius inner product Re Tr(A^dagger B).
double frobenius_inner(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace rains
