#include "rains/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "rains/entropy.hpp"
#include "rains/errors.hpp"

namespace rains {

namespace {

constexpr double kProbabilityTol = 1e-9;

int mod(int x, int n) { return ((x % n) + n) % n; }

ComplexMatrix projector_mixture(const std::vector<ComplexVector>& basis,
                                std::span<const double> weights) {
  const auto n = basis.front().size();
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (weights[i] != 0.0) out += weights[i] * basis[i] * basis[i].adjoint();
  }
  return out;
}

void require_square_bipartition(BipartiteDims dims, const char* what) {
  if (dims.a != dims.b) {
    throw DimensionError(std::string(what) + ": bipartition " + std::to_string(dims.a) + "x" +
                         std::to_string(dims.b) + " is not square");
  }
}

}  // namespace

int AbelianGroupSpec::order() const {
  int n = 1;
  for (int o : cyclic_orders) n *= o;
  return n;
}

std::vector<int> AbelianGroupSpec::element(int index) const {
  std::vector<int> out(cyclic_orders.size());
  for (std::size_t j = cyclic_orders.size(); j-- > 0;) {
    out[j] = index % cyclic_orders[j];
    index /= cyclic_orders[j];
  }
  return out;
}

int AbelianGroupSpec::index(std::span<const int> residues) const {
  int idx = 0;
  for (std::size_t j = 0; j < cyclic_orders.size(); ++j) {
    idx = idx * cyclic_orders[j] + mod(residues[j], cyclic_orders[j]);
  }
  return idx;
}

AbelianGroupSpec cyclic_group(int n) { return AbelianGroupSpec{{n}}; }

std::vector<BellLabel> bell_labels(const AbelianGroupSpec& group) {
  for (int o : group.cyclic_orders) {
    if (o < 1) throw DomainError("abelian group: cyclic orders must be positive");
  }
  const int n = group.order();
  std::vector<BellLabel> out;
  out.reserve(static_cast<std::size_t>(n) * n);
  for (int g = 0; g < n; ++g) {
    for (int a = 0; a < n; ++a) out.push_back({group.element(g), group.element(a)});
  }
  return out;
}

std::vector<ComplexVector> generalized_bell_basis(const AbelianGroupSpec& group) {
  const int n = group.order();
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<ComplexVector> out;
  for (const BellLabel& label : bell_labels(group)) {
    ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(n) * n);
    for (int h = 0; h < n; ++h) {
      const std::vector<int> hv = group.element(h);
      double phase = 0.0;
      std::vector<int> diff(hv.size());
      for (std::size_t j = 0; j < hv.size(); ++j) {
        const int order = group.cyclic_orders[j];
        phase += static_cast<double>(label.chi[j] * hv[j]) / order;
        diff[j] = mod(hv[j] - label.g[j], order);
      }
      // conj(chi(h))
      const Complex coeff = std::polar(norm, -2.0 * std::numbers::pi * phase);
      v(h * n + group.index(diff)) += coeff;
    }
    out.push_back(std::move(v));
  }
  return out;
}

ComplexMatrix maximally_entangled_projector(int k) {
  if (k < 1) throw DomainError("maximally entangled state: dimension must be positive");
  ComplexVector phi = ComplexVector::Zero(static_cast<Eigen::Index>(k) * k);
  for (int i = 0; i < k; ++i) phi(i * k + i) = 1.0 / std::sqrt(static_cast<double>(k));
  return phi * phi.adjoint();
}

DensityMatrix isotropic(int k, double f) {
  if (k < 2) throw DomainError("isotropic: K must be at least 2");
  if (!(f >= 0.0 && f <= 1.0)) {
    throw DomainError("isotropic: fidelity " + std::to_string(f) + " outside [0, 1]");
  }
  const int n = k * k;
  const ComplexMatrix p = maximally_entangled_projector(k);
  const ComplexMatrix rest = ComplexMatrix::Identity(n, n) - p;
  ComplexMatrix m = f * p + ((1.0 - f) / (n - 1)) * rest;
  return DensityMatrix(std::move(m), {k, k});
}

void require_probability_vector(std::span<const double> p, const char* what) {
  if (p.empty()) throw DomainError(std::string(what) + ": empty probability vector");
  double sum = 0.0;
  for (double x : p) {
    if (!(x >= -1e-12)) {
      throw DomainError(std::string(what) + ": negative probability " + std::to_string(x));
    }
    sum += x;
  }
  if (std::abs(sum - 1.0) > kProbabilityTol) {
    throw DomainError(std::string(what) + ": probabilities sum to " + std::to_string(sum));
  }
}

void require_density_operator(const ComplexMatrix& alpha, const char* what) {
  if (alpha.rows() == 0 || alpha.rows() != alpha.cols()) {
    throw DimensionError(std::string(what) + ": alpha must be a nonempty square matrix");
  }
  if (!is_hermitian(alpha, 1e-9)) throw SymmetryError(std::string(what) + ": alpha not Hermitian");
  if (std::abs(alpha.trace() - Complex(1.0)) > kProbabilityTol) {
    throw DomainError(std::string(what) + ": alpha does not have unit trace");
  }
  if (min_eigenvalue(alpha, 1e-9) < -1e-10) {
    throw DomainError(std::string(what) + ": alpha is not positive semidefinite");
  }
}

DensityMatrix bell_mixture(const AbelianGroupSpec& group, std::span<const double> weights) {
  const int n = group.order();
  if (weights.size() != static_cast<std::size_t>(n) * n) {
    throw DimensionError("bell_mixture: expected |G|^2 weights");
  }
  require_probability_vector(weights, "bell_mixture");
  return DensityMatrix(projector_mixture(generalized_bell_basis(group), weights), {n, n});
}

DensityMatrix bell_diagonal(const std::array<double, 4>& p) {
  return bell_mixture(cyclic_group(2), p);
}

DensityMatrix max_correlated(const ComplexMatrix& alpha) {
  require_density_operator(alpha, "max_correlated");
  const int k = static_cast<int>(alpha.rows());
  ComplexMatrix m = ComplexMatrix::Zero(k * k, k * k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) m(i * k + i, j * k + j) = alpha(i, j);
  }
  return DensityMatrix(std::move(m), {k, k}, kInputTolerances);
}

DensityMatrix pure_state(std::span<const double> schmidt) {
  require_probability_vector(schmidt, "pure_state");
  const int k = static_cast<int>(schmidt.size());
  ComplexVector psi = ComplexVector::Zero(static_cast<Eigen::Index>(k) * k);
  for (int i = 0; i < k; ++i) psi(i * k + i) = std::sqrt(std::max(0.0, schmidt[i]));
  psi /= psi.norm();
  return DensityMatrix(psi * psi.adjoint(), {k, k});
}

StatePair counterexample_pair() {
  const double x = 1.0 / std::log(73.0 / 23.0);

  ComplexMatrix sigma = ComplexMatrix::Zero(4, 4);
  sigma(0, 0) = 1.0 / 6.0;
  sigma(1, 1) = 55.0 / 144.0;
  sigma(1, 2) = sigma(2, 1) = -1.0 / 6.0;
  sigma(2, 2) = 41.0 / 144.0;
  sigma(3, 3) = 1.0 / 6.0;

  ComplexMatrix rho = ComplexMatrix::Zero(4, 4);
  rho(0, 0) = 1.0 / 12.0;
  rho(1, 1) = 45907.0 / 90000.0 - (7.0 / 150.0) * x;
  rho(1, 2) = rho(2, 1) = -1201.0 / 3750.0 - (49.0 / 3600.0) * x;
  rho(2, 2) = 29093.0 / 90000.0 + (7.0 / 150.0) * x;
  rho(3, 3) = 1.0 / 12.0;

  return {DensityMatrix(std::move(rho), {2, 2}), DensityMatrix(std::move(sigma), {2, 2})};
}

DensityMatrix isotropic_twirl(const DensityMatrix& m) {
  require_square_bipartition(m.dims(), "isotropic_twirl");
  const double f = std::clamp(fidelity(m), 0.0, 1.0);
  return isotropic(m.dims().a, f);
}

std::vector<double> bell_weights(const ComplexMatrix& m, const AbelianGroupSpec& group) {
  const int n = group.order();
  if (m.rows() != static_cast<Eigen::Index>(n) * n || m.cols() != m.rows()) {
    throw DimensionError("bell_twirl: matrix dimension does not match |G|^2");
  }
  std::vector<double> w;
  for (const ComplexVector& v : generalized_bell_basis(group)) {
    w.push_back((v.adjoint() * m * v)(0, 0).real());
  }
  return w;
}

ComplexMatrix bell_twirl(const ComplexMatrix& m, const AbelianGroupSpec& group) {
  const std::vector<double> w = bell_weights(m, group);
  return projector_mixture(generalized_bell_basis(group), w);
}

DensityMatrix bell_twirl(const DensityMatrix& m, const AbelianGroupSpec& group) {
  const int n = group.order();
  if (m.dims().a != n || m.dims().b != n) {
    throw DimensionError("bell_twirl: bipartition does not match |G| x |G|");
  }
  return DensityMatrix(bell_twirl(m.matrix(), group), m.dims());
}

}  // namespace rains
