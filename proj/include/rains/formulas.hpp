#pragma once

// Closed-form values of B(rho) = min_{sigma PPT} S(rho || sigma) for the
// families where the optimal sigma is known explicitly, and the two-copy
// non-additivity experiment.

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rains/kkt.hpp"
#include "rains/pptopt.hpp"

namespace rains {

struct ClosedFormResult {
  Bits bound;
  std::optional<DensityMatrix> sigma_opt;
  std::string family;
  // bell_z2_bound only: input label indices sorted by decreasing weight.
  std::vector<int> label_order;
};

// log2 K + F log2 F + (1-F) log2((1-F)/(K-1)) for F >= 1/K with the optimal
// sigma the isotropic state of fidelity 1/K; 0 and sigma = rho below 1/K.
ClosedFormResult isotropic_bound(int k, double f);

// 1 + a log2 a + (1-a) log2 (1-a) for the largest Bell weight a >= 1/2, with
// sigma = 1/2 on the heaviest label and w/(2(1-a)) on the others. A state with
// a < 1/2 is PPT: 0 and sigma = rho.
ClosedFormResult bell_z2_bound(const std::array<double, 4>& p);

// S(diag alpha) - S(alpha), sigma = sum alpha_ii |ii><ii|.
ClosedFormResult maxcorr_bound(const ComplexMatrix& alpha);

// Shannon entropy of the Schmidt coefficients.
ClosedFormResult pure_state_bound(std::span<const double> schmidt);

struct NonadditivityReport {
  Bits b1;                 // S(rho || sigma) for the explicit pair
  KktReport kkt_single;    // certificate for (rho, sigma)
  KktReport kkt_double;    // certificate for (rho (x) rho, sigma (x) sigma)
  OptimizerResult two_copy;
  Bits b2;                 // objective at the optimizer's feasible sigma
  Bits b2_lower;           // duality_lower_bound at that sigma; B(rho (x) rho) >= b2_lower
  double gap = 0.0;        // 2 b1 - b2
  double eval_slack = 0.0; // bound on rounding in b1 and b2
  // kkt_single passed, the two-copy run converged, and gap > eval_slack.
  // b2 is attained by a feasible sigma, so this proves B(rho (x) rho) < 2 B(rho).
  bool strict_gap = false;
};

NonadditivityReport nonadditivity_experiment(const OptimizerConfig& cfg = {},
                                             const SearchHints& hints = {});

}  // namespace rains
