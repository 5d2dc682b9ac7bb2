#include "rains/formulas.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rains/entropy.hpp"
#include "rains/errors.hpp"
#include "rains/states.hpp"

namespace rains {

namespace {

// x log2 x with the 0 log 0 = 0 convention.
double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

// Conservative bound on rounding in the two evaluated relative entropies.
constexpr double kEvalSlack = 1e-10;

}  // namespace

ClosedFormResult isotropic_bound(int k, double f) {
  DensityMatrix rho = isotropic(k, f);  // validates K and F
  if (f < 1.0 / k) return {Bits{0.0}, std::move(rho), "isotropic", {}};
  const double value =
      std::log2(static_cast<double>(k)) + xlog2x(f) +
      (f < 1.0 ? (1.0 - f) * std::log2((1.0 - f) / (k - 1)) : 0.0);
  // Isotropic state of fidelity 1/K: P+/(K+1) + I/(K(K+1)).
  return {Bits{std::max(0.0, value)}, isotropic(k, 1.0 / k), "isotropic", {}};
}

ClosedFormResult bell_z2_bound(const std::array<double, 4>& p) {
  DensityMatrix rho = bell_diagonal(p);  // validates the simplex point
  std::vector<int> order(4);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return p[x] > p[y]; });
  const double a = p[order[0]];
  if (a < 0.5) return {Bits{0.0}, std::move(rho), "bell_diagonal", order};

  std::array<double, 4> weights{};
  weights[order[0]] = 0.5;
  for (int i = 1; i < 4; ++i) {
    // a = 1 leaves the remaining half free; spread it evenly.
    weights[order[i]] = a < 1.0 ? p[order[i]] / (2.0 * (1.0 - a)) : 1.0 / 6.0;
  }
  const double value = 1.0 + xlog2x(a) + xlog2x(1.0 - a);
  return {Bits{std::max(0.0, value)}, bell_diagonal(weights), "bell_diagonal", order};
}

ClosedFormResult maxcorr_bound(const ComplexMatrix& alpha) {
  require_density_operator(alpha, "maxcorr_bound");
  const int k = static_cast<int>(alpha.rows());
  std::vector<double> diag(k);
  ComplexMatrix sigma = ComplexMatrix::Zero(k * k, k * k);
  for (int i = 0; i < k; ++i) {
    diag[i] = alpha(i, i).real();
    sigma(i * k + i, i * k + i) = diag[i];
  }
  const double value = shannon_entropy_bits(diag) - von_neumann_entropy(alpha).value;
  return {Bits{std::max(0.0, value)}, DensityMatrix(std::move(sigma), {k, k}, kInputTolerances),
          "max_correlated", {}};
}

ClosedFormResult pure_state_bound(std::span<const double> schmidt) {
  require_probability_vector(schmidt, "pure_state_bound");
  return {Bits{shannon_entropy_bits(schmidt)}, std::nullopt, "pure", {}};
}

NonadditivityReport nonadditivity_experiment(const OptimizerConfig& cfg,
                                             const SearchHints& hints) {
  const StatePair pair = counterexample_pair();
  const DensityMatrix rho2 = tensor(pair.rho, pair.rho);
  const DensityMatrix sigma2 = tensor(pair.sigma, pair.sigma);

  NonadditivityReport report{
      relative_entropy(pair.rho, pair.sigma),
      kkt_check(pair.rho, pair.sigma),
      kkt_check(rho2, sigma2),
      minimize_rel_entropy(rho2, cfg, hints),
      Bits{},
      Bits{},
  };
  report.b2 = report.two_copy.bound;
  report.b2_lower = duality_lower_bound(rho2, report.two_copy.sigma_opt);
  report.gap = 2.0 * report.b1.value - report.b2.value;
  report.eval_slack = kEvalSlack;
  report.strict_gap = report.kkt_single.passed && report.two_copy.converged &&
                      report.gap > report.eval_slack;
  return report;
}

}  // namespace rains
