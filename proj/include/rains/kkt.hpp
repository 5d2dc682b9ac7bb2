#pragma once

// First-order optimality certificates for sigma minimizing S(rho || sigma)
// over PPT states. With G = D_sigma Tr(rho ln sigma) and K = I - G, a definite
// PPT sigma is optimal iff sigma^Gamma K^Gamma = 0 and K^Gamma >= 0.

#include <optional>

#include "rains/density_matrix.hpp"
#include "rains/entropy.hpp"

namespace rains {

inline constexpr double kCertificateTol = 1e-8;

// Extra terms of the semidefinite certificate I - G = K + L with sigma L = 0,
// L >= 0, built for maximally correlated states.
struct SemidefiniteTerms {
  ComplexMatrix l_matrix;
  double l_min_eig = 0.0;
  double sigma_l_residual = 0.0;        // ||sigma L||_F
  double decomposition_residual = 0.0;  // ||(I - G) - K - L||_F
  double max_pair_ratio = 0.0;          // max_{i != j} |alpha_ij| f(alpha_ii, alpha_jj)
  bool scalar_route_ok = false;
};

struct KktReport {
  ComplexMatrix k_matrix;
  double complementarity_residual = 0.0;  // ||sigma^Gamma K^Gamma||_F
  double k_gamma_min_eig = 0.0;
  bool passed = false;
  std::optional<SemidefiniteTerms> semidefinite;
};

// Definite-case certificate. A singular sigma is routed to
// kkt_check_maxcorr when rho is maximally correlated and sigma is its
// diagonal part; otherwise SemidefiniteSigmaError. Throws
// InfiniteEntropyError when supp(rho) is not inside supp(sigma) and
// DomainError when sigma is not PPT within tol.
KktReport kkt_check(const DensityMatrix& rho, const DensityMatrix& sigma,
                    double tol = kCertificateTol);

// Certificate for rho = sum alpha_ij |ii><jj| and sigma = sum alpha_ii |ii><ii|
// with lambda_ij = 1 - min(1, |alpha_ij| f(alpha_ii, alpha_jj)).
KktReport kkt_check_maxcorr(const ComplexMatrix& alpha, double tol = kCertificateTol);

// Sufficient conditions for additivity when sigma is optimal for rho and
// commutes with it, from the spectrum of M^Gamma with M = D_sigma Tr(rho ln sigma).
struct AdditivityReport {
  bool commutes = false;
  double commutator_norm = 0.0;
  double grad_pt_min_eig = 0.0;
  bool additive_universal = false;  // B(rho (x) rho') = B(rho) + B(rho') for all rho'
  bool additive_self = false;       // B(rho^{(x) n}) = n B(rho)
};

AdditivityReport additivity_check(const DensityMatrix& rho, const DensityMatrix& sigma,
                                  double tol = kCertificateTol);

// Lower bound on B(rho) from any positive definite PPT sigma, by convexity:
// B(rho) >= S(rho || sigma) + 1 - max_{tau PPT} Tr(G tau) (natural log scale),
// with the maximum bounded by min(lambda_max(G), lambda_max(G^Gamma)). Tight
// when sigma is optimal and definite.
Bits duality_lower_bound(const DensityMatrix& rho, const DensityMatrix& sigma);

}  // namespace rains
