#pragma once

#include "rains/linalg.hpp"

namespace rains {

struct DensityTolerances {
  double hermitian = kHermitianTol;  // relative Frobenius defect
  double trace = 1e-12;
  double min_eig = 1e-10;
};

// Validation thresholds for externally supplied matrices.
inline constexpr DensityTolerances kInputTolerances{1e-9, 1e-9, 1e-9};

// A bipartite quantum state: Hermitian, unit trace, positive semidefinite.
// Construction validates; entries are stored as given.
class DensityMatrix {
 public:
  DensityMatrix(ComplexMatrix m, BipartiteDims dims, const DensityTolerances& tol = {});

  static DensityMatrix maximally_mixed(BipartiteDims dims);

  const ComplexMatrix& matrix() const { return m_; }
  BipartiteDims dims() const { return dims_; }
  int dim() const { return static_cast<int>(m_.rows()); }

 private:
  ComplexMatrix m_;
  BipartiteDims dims_;
};

// rho (x) rho' regrouped as a state on (A A') | (B B').
DensityMatrix tensor(const DensityMatrix& x, const DensityMatrix& y);

}  // namespace rains
