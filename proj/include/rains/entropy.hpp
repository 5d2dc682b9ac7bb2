#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <span>

#include "rains/density_matrix.hpp"

namespace rains {

// An information quantity in bits. +infinity is a legitimate value.
struct Bits {
  double value = 0.0;

  static Bits infinity() { return {std::numeric_limits<double>::infinity()}; }
  static Bits from_nats(double nats) { return {nats / std::numbers::ln2}; }

  bool is_finite() const { return std::isfinite(value); }
  double nats() const { return value * std::numbers::ln2; }
};

// <Phi+|sigma|Phi+> with Phi+ = K^{-1/2} sum_i |ii>. Requires d_A = d_B.
double fidelity(const DensityMatrix& sigma);

// -sum p_i log2 p_i over entries above the clamp floor.
double shannon_entropy_bits(std::span<const double> p);

// Entropy of any PSD unit-trace matrix (not necessarily bipartite).
Bits von_neumann_entropy(const ComplexMatrix& m);
Bits von_neumann_entropy(const DensityMatrix& rho);

// True when rho has weight <= 1e-9 on every eigenvector of sigma whose
// eigenvalue is <= kEigFloor.
bool support_contained(const ComplexMatrix& rho, const EigenDecomposition& sigma_eig);

// -Tr(rho ln sigma) in nats, +inf off support. The optimizer's objective up
// to the constant -S(rho).
double cross_entropy_nats(const ComplexMatrix& rho, const EigenDecomposition& sigma_eig);

// S(rho || sigma) = Tr rho (log2 rho - log2 sigma).
Bits relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);
Bits relative_entropy(const ComplexMatrix& rho, const ComplexMatrix& sigma);

}  // namespace rains
