#include "rains/density_matrix.hpp"

#include <cmath>
#include <string>

#include "rains/errors.hpp"

namespace rains {

DensityMatrix::DensityMatrix(ComplexMatrix m, BipartiteDims dims, const DensityTolerances& tol)
    : m_(std::move(m)), dims_(dims) {
  if (m_.rows() != m_.cols()) throw DimensionError("density matrix: matrix is not square");
  if (dims_.a < 1 || dims_.b < 1 || m_.rows() != dims_.total()) {
    throw DimensionError("density matrix: dimension " + std::to_string(m_.rows()) +
                         " does not match bipartition " + std::to_string(dims_.a) + "x" +
                         std::to_string(dims_.b));
  }
  const double defect = hermiticity_defect(m_);
  if (defect > tol.hermitian) {
    throw SymmetryError("density matrix: not Hermitian (relative defect " +
                        std::to_string(defect) + ")");
  }
  const Complex tr = m_.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > tol.trace) {
    throw DomainError("density matrix: trace is " + std::to_string(tr.real()) +
                      ", expected 1");
  }
  const double lo = min_eigenvalue(m_, tol.hermitian);
  if (lo < -tol.min_eig) {
    throw DomainError("density matrix: not positive semidefinite (min eigenvalue " +
                      std::to_string(lo) + ")");
  }
}

DensityMatrix DensityMatrix::maximally_mixed(BipartiteDims dims) {
  const int n = dims.total();
  return DensityMatrix(ComplexMatrix::Identity(n, n) / static_cast<double>(n), dims);
}

DensityMatrix tensor(const DensityMatrix& x, const DensityMatrix& y) {
  const BipartiteDims dims{x.dims().a * y.dims().a, x.dims().b * y.dims().b};
  return DensityMatrix(bipartite_kron(x.matrix(), x.dims(), y.matrix(), y.dims()), dims);
}

}  // namespace rains
