#include "rains/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rains/errors.hpp"

namespace rains {

namespace {

// Weight of rho on a kernel direction of sigma above which the support
// condition is considered violated.
constexpr double kSupportWeightTol = 1e-9;

constexpr double kNegativeEigTol = 1e-10;

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw DimensionError(std::string(what) + ": matrix is not square");
  }
}

void require_dims(const ComplexMatrix& m, BipartiteDims dims, const char* what) {
  require_square(m, what);
  if (dims.a < 1 || dims.b < 1 || m.rows() != dims.total()) {
    throw DimensionError(std::string(what) + ": dimension " + std::to_string(m.rows()) +
                         " does not match " + std::to_string(dims.a) + "x" +
                         std::to_string(dims.b));
  }
}

}  // namespace

double hermiticity_defect(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  const double scale = std::max(1.0, m.norm());
  return (m - m.adjoint()).norm() / scale;
}

bool is_hermitian(const ComplexMatrix& m, double rel_tol) {
  return hermiticity_defect(m) <= rel_tol;
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint()); }

EigenDecomposition eig_hermitian(const ComplexMatrix& m, double rel_tol) {
  require_square(m, "eig_hermitian");
  const double defect = hermiticity_defect(m);
  if (defect > rel_tol) {
    throw SymmetryError("eig_hermitian: matrix is not Hermitian (relative defect " +
                        std::to_string(defect) + ")");
  }
  if (m.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(m));
  if (solver.info() != Eigen::Success) {
    throw Error("eig_hermitian: eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

RealVector eigenvalues_hermitian(const ComplexMatrix& m, double rel_tol) {
  require_square(m, "eigenvalues_hermitian");
  const double defect = hermiticity_defect(m);
  if (defect > rel_tol) {
    throw SymmetryError("eigenvalues_hermitian: matrix is not Hermitian (relative defect " +
                        std::to_string(defect) + ")");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(m), Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double min_eigenvalue(const ComplexMatrix& m, double rel_tol) {
  const RealVector w = eigenvalues_hermitian(m, rel_tol);
  return w.size() == 0 ? 0.0 : w(0);
}

ComplexMatrix apply_spectral(const EigenDecomposition& eig,
                             const std::function<double(double)>& f) {
  const auto n = eig.values.size();
  RealVector fw(n);
  for (Eigen::Index i = 0; i < n; ++i) fw(i) = f(eig.values(i));
  ComplexMatrix out = eig.vectors * fw.asDiagonal() * eig.vectors.adjoint();
  return hermitian_part(out);
}

ComplexMatrix apply_spectral(const ComplexMatrix& m, const std::function<double(double)>& f) {
  return apply_spectral(eig_hermitian(m), f);
}

ComplexMatrix matrix_log(const ComplexMatrix& m, double floor) {
  if (!(floor > 0.0)) throw DomainError("matrix_log: floor must be positive");
  const EigenDecomposition eig = eig_hermitian(m);
  const double tol = std::max(floor, kNegativeEigTol * std::max(1.0, m.norm()));
  if (eig.values.size() > 0 && eig.values(0) < -tol) {
    throw DomainError("matrix_log: matrix has negative eigenvalue " +
                      std::to_string(eig.values(0)));
  }
  return apply_spectral(eig, [floor](double x) { return std::log(std::max(x, floor)); });
}

ComplexMatrix matrix_exp_hermitian(const ComplexMatrix& h) {
  return apply_spectral(h, [](double x) { return std::exp(x); });
}

double log_divided_difference(double a, double b) {
  if (a == b) return 1.0 / a;
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  const double diff = hi - lo;
  // log1p keeps the nearly-equal case accurate.
  if (diff < 0.5 * lo) return std::log1p(diff / lo) / diff;
  return (std::log(hi) - std::log(lo)) / diff;
}

ComplexMatrix dd_gradient(const ComplexMatrix& rho, const EigenDecomposition& sigma_eig,
                          double floor) {
  const auto n = sigma_eig.values.size();
  if (rho.rows() != n || rho.cols() != n) {
    throw DimensionError("dd_gradient: rho and sigma dimensions differ");
  }
  const ComplexMatrix& v = sigma_eig.vectors;
  ComplexMatrix rt = v.adjoint() * rho * v;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double si = sigma_eig.values(i);
    if (si <= floor) {
      const double weight = rt(i, i).real();
      if (weight > kSupportWeightTol) {
        throw InfiniteEntropyError("dd_gradient: rho has weight " + std::to_string(weight) +
                                   " outside the support of sigma");
      }
      rt.row(i).setZero();
      rt.col(i).setZero();
      continue;
    }
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double sj = sigma_eig.values(j);
      if (sj <= floor) continue;
      const double f = log_divided_difference(si, sj);
      rt(i, j) *= f;
      if (j != i) rt(j, i) *= f;
    }
  }
  return hermitian_part(v * rt * v.adjoint());
}

ComplexMatrix dd_gradient(const ComplexMatrix& rho, const ComplexMatrix& sigma, double floor) {
  require_square(rho, "dd_gradient");
  return dd_gradient(rho, eig_hermitian(sigma), floor);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const auto ar = a.rows(), ac = a.cols(), br = b.rows(), bc = b.cols();
  ComplexMatrix out(ar * br, ac * bc);
  for (Eigen::Index i = 0; i < ar; ++i) {
    for (Eigen::Index j = 0; j < ac; ++j) {
      out.block(i * br, j * bc, br, bc) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, BipartiteDims dims) {
  require_dims(m, dims, "partial_transpose");
  const int da = dims.a, db = dims.b;
  ComplexMatrix out(m.rows(), m.cols());
  for (int i = 0; i < da; ++i) {
    for (int k = 0; k < da; ++k) {
      out.block(i * db, k * db, db, db) = m.block(i * db, k * db, db, db).transpose();
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, BipartiteDims dims, Subsystem traced) {
  require_dims(m, dims, "partial_trace");
  const int da = dims.a, db = dims.b;
  if (traced == Subsystem::A) {
    ComplexMatrix out = ComplexMatrix::Zero(db, db);
    for (int i = 0; i < da; ++i) out += m.block(i * db, i * db, db, db);
    return out;
  }
  ComplexMatrix out(da, da);
  for (int i = 0; i < da; ++i) {
    for (int k = 0; k < da; ++k) out(i, k) = m.block(i * db, k * db, db, db).trace();
  }
  return out;
}

ComplexMatrix bipartite_kron(const ComplexMatrix& x, BipartiteDims dx, const ComplexMatrix& y,
                             BipartiteDims dy) {
  require_dims(x, dx, "bipartite_kron");
  require_dims(y, dy, "bipartite_kron");
  const int a1 = dx.a, b1 = dx.b, a2 = dy.a, b2 = dy.b;
  const int db = b1 * b2;
  const int n = a1 * a2 * db;
  ComplexMatrix out(n, n);
  // Row index of |a1 b1 a2 b2> in the regrouped basis |a1 a2>|b1 b2>.
  auto index = [&](int i1, int j1, int i2, int j2) { return (i1 * a2 + i2) * db + j1 * b2 + j2; };
  for (int r1 = 0; r1 < a1 * b1; ++r1) {
    for (int c1 = 0; c1 < a1 * b1; ++c1) {
      const Complex xv = x(r1, c1);
      for (int r2 = 0; r2 < a2 * b2; ++r2) {
        const int row = index(r1 / b1, r1 % b1, r2 / b2, r2 % b2);
        for (int c2 = 0; c2 < a2 * b2; ++c2) {
          out(row, index(c1 / b1, c1 % b1, c2 / b2, c2 % b2)) = xv * y(r2, c2);
        }
      }
    }
  }
  return out;
}

double frobenius_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a.array().conjugate() * b.array()).sum().real();
}

}  // namespace rains
