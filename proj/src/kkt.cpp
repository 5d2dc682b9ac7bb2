#include "rains/kkt.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rains/entropy.hpp"
#include "rains/errors.hpp"
#include "rains/states.hpp"

namespace rains {

namespace {

// alpha with rho = sum alpha_ij |ii><jj|, if rho has that form and sigma is
// its diagonal part.
std::optional<ComplexMatrix> maxcorr_alpha(const DensityMatrix& rho, const DensityMatrix& sigma,
                                           double tol) {
  const auto d = rho.dims();
  if (d.a != d.b) return std::nullopt;
  const int k = d.a;
  ComplexMatrix alpha(k, k);
  ComplexMatrix rest = rho.matrix();
  ComplexMatrix sigma_rest = sigma.matrix();
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      alpha(i, j) = rho.matrix()(i * k + i, j * k + j);
      rest(i * k + i, j * k + j) = 0.0;
    }
    if (std::abs(sigma.matrix()(i * k + i, i * k + i) - alpha(i, i)) > tol) return std::nullopt;
    sigma_rest(i * k + i, i * k + i) = 0.0;
  }
  if (rest.norm() > tol || sigma_rest.norm() > tol) return std::nullopt;
  return alpha;
}

}  // namespace

KktReport kkt_check(const DensityMatrix& rho, const DensityMatrix& sigma, double tol) {
  if (!(rho.dims() == sigma.dims())) {
    throw DimensionError("kkt_check: rho and sigma have different bipartitions");
  }
  const BipartiteDims dims = sigma.dims();
  const ComplexMatrix sigma_pt = partial_transpose(sigma.matrix(), dims);
  if (min_eigenvalue(sigma_pt) < -tol) throw DomainError("kkt_check: sigma is not PPT");

  const EigenDecomposition eig = eig_hermitian(sigma.matrix());
  if (!support_contained(rho.matrix(), eig)) {
    throw InfiniteEntropyError("kkt_check: support of rho is not contained in support of sigma");
  }
  if (eig.values(0) <= kEigFloor) {
    if (auto alpha = maxcorr_alpha(rho, sigma, tol)) return kkt_check_maxcorr(*alpha, tol);
    throw SemidefiniteSigmaError(
        "kkt_check: sigma is singular; the definite-case certificate does not apply and the "
        "semidefinite certificate is only available for maximally correlated states with "
        "sigma equal to their diagonal part");
  }

  const auto n = sigma.matrix().rows();
  KktReport report;
  report.k_matrix = ComplexMatrix::Identity(n, n) - dd_gradient(rho.matrix(), eig);
  const ComplexMatrix k_pt = partial_transpose(report.k_matrix, dims);
  report.complementarity_residual = (sigma_pt * k_pt).norm();
  report.k_gamma_min_eig = min_eigenvalue(k_pt);
  report.passed = report.complementarity_residual <= tol && report.k_gamma_min_eig >= -tol;
  return report;
}

KktReport kkt_check_maxcorr(const ComplexMatrix& alpha, double tol) {
  require_density_operator(alpha, "kkt_check_maxcorr");
  const int k = static_cast<int>(alpha.rows());
  const int n = k * k;
  const BipartiteDims dims{k, k};
  auto at = [k](int i, int j) { return i * k + j; };

  const DensityMatrix rho = max_correlated(alpha);
  ComplexMatrix sigma = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < k; ++i) sigma(at(i, i), at(i, i)) = alpha(i, i).real();

  SemidefiniteTerms terms;
  ComplexMatrix kmat = ComplexMatrix::Zero(n, n);
  ComplexMatrix lmat = ComplexMatrix::Zero(n, n);
  bool scalar_ok = true;
  for (int i = 0; i < k; ++i) {
    const double ai = alpha(i, i).real();
    // |ii> outside supp(sigma) belongs to the kernel term.
    if (ai <= kEigFloor) lmat(at(i, i), at(i, i)) = 1.0;
    for (int j = 0; j < k; ++j) {
      if (i == j) continue;
      const double aj = alpha(j, j).real();
      double ratio = 0.0;
      if (ai > kEigFloor && aj > kEigFloor) {
        const double f = log_divided_difference(ai, aj);
        ratio = std::abs(alpha(i, j)) * f;
        kmat(at(i, i), at(j, j)) = -alpha(i, j) * f;
        // (|a_ij| f)^2 <= a_ii a_jj f^2 = beta ln(beta)^2 / (1 - beta)^2 <= 1
        const double beta = aj / ai;
        const double envelope =
            beta == 1.0 ? 1.0 : beta * std::pow(std::log(beta), 2) / std::pow(1.0 - beta, 2);
        scalar_ok = scalar_ok && ratio * ratio <= ai * aj * f * f + tol && envelope <= 1.0 + tol;
      }
      terms.max_pair_ratio = std::max(terms.max_pair_ratio, ratio);
      const double lambda = 1.0 - std::min(1.0, ratio);
      kmat(at(i, j), at(i, j)) = 1.0 - lambda;
      lmat(at(i, j), at(i, j)) = lambda;
    }
  }
  terms.scalar_route_ok = scalar_ok && terms.max_pair_ratio <= 1.0 + tol;

  // The decomposition is checked against the general divided-difference
  // gradient, not the closed form used to build K.
  const ComplexMatrix g = dd_gradient(rho.matrix(), sigma);
  const ComplexMatrix one_minus_g = ComplexMatrix::Identity(n, n) - g;
  terms.decomposition_residual = (one_minus_g - kmat - lmat).norm();
  terms.sigma_l_residual = (sigma * lmat).norm();
  terms.l_min_eig = min_eigenvalue(lmat);
  terms.l_matrix = lmat;

  KktReport report;
  const ComplexMatrix k_pt = partial_transpose(kmat, dims);
  report.complementarity_residual = (partial_transpose(sigma, dims) * k_pt).norm();
  report.k_gamma_min_eig = min_eigenvalue(k_pt);
  report.k_matrix = std::move(kmat);
  report.passed = report.complementarity_residual <= tol && report.k_gamma_min_eig >= -tol &&
                  terms.sigma_l_residual <= tol && terms.l_min_eig >= -tol &&
                  terms.decomposition_residual <= tol && terms.scalar_route_ok;
  report.semidefinite = std::move(terms);
  return report;
}

AdditivityReport additivity_check(const DensityMatrix& rho, const DensityMatrix& sigma,
                                  double tol) {
  if (!(rho.dims() == sigma.dims())) {
    throw DimensionError("additivity_check: rho and sigma have different bipartitions");
  }
  const ComplexMatrix& r = rho.matrix();
  const ComplexMatrix& s = sigma.matrix();
  AdditivityReport report;
  report.commutator_norm = (r * s - s * r).norm();
  report.commutes = report.commutator_norm <= tol;
  const ComplexMatrix m = dd_gradient(r, s);
  report.grad_pt_min_eig = min_eigenvalue(partial_transpose(m, rho.dims()));
  report.additive_universal = report.commutes && report.grad_pt_min_eig >= -tol;
  report.additive_self = report.commutes && report.grad_pt_min_eig >= -1.0 - tol;
  return report;
}

Bits duality_lower_bound(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (!(rho.dims() == sigma.dims())) {
    throw DimensionError("duality_lower_bound: rho and sigma have different bipartitions");
  }
  const EigenDecomposition eig = eig_hermitian(sigma.matrix());
  if (eig.values(0) <= kEigFloor) {
    throw SemidefiniteSigmaError("duality_lower_bound: sigma must be positive definite");
  }
  const ComplexMatrix g = dd_gradient(rho.matrix(), eig);
  // max over PPT tau of Tr(G tau) is at most the smaller top eigenvalue of G and G^Gamma.
  const double top = std::min(eigenvalues_hermitian(g).maxCoeff(),
                              eigenvalues_hermitian(partial_transpose(g, rho.dims())).maxCoeff());
  return Bits::from_nats(relative_entropy(rho, sigma).nats() + 1.0 - top);
}

}  // namespace rains
