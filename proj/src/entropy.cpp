#include "rains/entropy.hpp"

#include <cmath>

#include "rains/errors.hpp"

namespace rains {

namespace {

constexpr double kSupportWeightTol = 1e-9;

// -sum lambda ln lambda over the clamped spectrum.
double entropy_nats(const RealVector& w) {
  double s = 0.0;
  for (double x : w) {
    if (x > kEigFloor) s -= x * std::log(x);
  }
  return s;
}

}  // namespace

double fidelity(const DensityMatrix& sigma) {
  const auto d = sigma.dims();
  if (d.a != d.b) throw DimensionError("fidelity: bipartition is not square");
  const int k = d.a;
  Complex sum = 0.0;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) sum += sigma.matrix()(i * k + i, j * k + j);
  }
  return sum.real() / k;
}

double shannon_entropy_bits(std::span<const double> p) {
  double s = 0.0;
  for (double x : p) {
    if (x > kEigFloor) s -= x * std::log2(x);
  }
  return s;
}

Bits von_neumann_entropy(const ComplexMatrix& m) {
  return Bits::from_nats(entropy_nats(eigenvalues_hermitian(m)));
}

Bits von_neumann_entropy(const DensityMatrix& rho) { return von_neumann_entropy(rho.matrix()); }

bool support_contained(const ComplexMatrix& rho, const EigenDecomposition& sigma_eig) {
  for (Eigen::Index i = 0; i < sigma_eig.values.size(); ++i) {
    if (sigma_eig.values(i) > kEigFloor) break;
    const auto v = sigma_eig.vectors.col(i);
    const double weight = (v.adjoint() * rho * v)(0, 0).real();
    if (weight > kSupportWeightTol) return false;
  }
  return true;
}

double cross_entropy_nats(const ComplexMatrix& rho, const EigenDecomposition& sigma_eig) {
  if (rho.rows() != sigma_eig.values.size()) {
    throw DimensionError("cross_entropy: rho and sigma dimensions differ");
  }
  if (!support_contained(rho, sigma_eig)) return std::numeric_limits<double>::infinity();
  const ComplexMatrix& v = sigma_eig.vectors;
  double s = 0.0;
  for (Eigen::Index i = 0; i < sigma_eig.values.size(); ++i) {
    const double lambda = sigma_eig.values(i);
    if (lambda <= kEigFloor) continue;
    const double weight = (v.col(i).adjoint() * rho * v.col(i))(0, 0).real();
    s -= weight * std::log(lambda);
  }
  return s;
}

Bits relative_entropy(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) {
    throw DimensionError("relative_entropy: rho and sigma dimensions differ");
  }
  const double cross = cross_entropy_nats(rho, eig_hermitian(sigma));
  if (!std::isfinite(cross)) return Bits::infinity();
  return Bits::from_nats(cross - entropy_nats(eigenvalues_hermitian(rho)));
}

Bits relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return relative_entropy(rho.matrix(), sigma.matrix());
}

}  // namespace rains
