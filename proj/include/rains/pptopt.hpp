#pragma once

// The PPT set {sigma >= 0, sigma^Gamma >= 0, Tr sigma = 1}, Frobenius
// projection onto it, and minimization of S(rho || sigma) over it.

#include <functional>
#include <optional>

#include "rains/density_matrix.hpp"
#include "rains/entropy.hpp"

namespace rains {

struct OptimizerConfig {
  int max_iters = 200000;
  double step_init = 1.0;
  double armijo_c = 1e-4;
  double backtrack_ratio = 0.5;
  double grad_map_tol = 1e-7;
  double obj_tol = 1e-14;      // relative change over obj_window iterations
  int obj_window = 10;
  int dykstra_iters = 5000;
  double dykstra_tol = 1e-11;
  double eig_floor = kEigFloor;
  int max_backtracks = 60;
  int nonmonotone_memory = 10;  // Armijo reference is the max over this many objectives
  double step_min = 1e-10;      // safeguards on the spectral step length
  double step_max = 1e10;

  // Throws DomainError unless tolerances are positive, ratios lie in (0,1)
  // and iteration caps are >= 1.
  void validate() const;
};

struct PptReport {
  bool ppt = false;
  double min_eig = 0.0;  // of rho^Gamma
};

PptReport is_ppt(const ComplexMatrix& m, BipartiteDims dims, double tol);
PptReport is_ppt(const DensityMatrix& rho, double tol);

struct ProjectionResult {
  ComplexMatrix sigma;  // exactly PPT with unit trace; PSD up to `residual`
  bool converged = false;
  double residual = 0.0;  // Frobenius gap between the last two Dykstra iterates
  int cycles = 0;

  DensityMatrix state(BipartiteDims dims) const;
};

// Frobenius-nearest PPT density matrix to the Hermitian matrix m, computed
// by Dykstra's alternating projections between the density matrices and
// their partial-transpose image (each set carries the trace-one constraint).
ProjectionResult project_ppt(const ComplexMatrix& m, BipartiteDims dims,
                             const OptimizerConfig& cfg = {});

// Dykstra correction terms for the two sets. Passing the corrections left by
// a previous call warm-starts the projection of a nearby matrix.
struct DykstraCorrections {
  ComplexMatrix p;
  ComplexMatrix q;
};

ProjectionResult project_ppt(const ComplexMatrix& m, BipartiteDims dims,
                             const OptimizerConfig& cfg, DykstraCorrections& corr);

// Frobenius projection onto {X >= 0, Tr X = 1}.
ComplexMatrix project_density(const ComplexMatrix& m);

// Euclidean projection of v onto the probability simplex.
RealVector project_simplex(const RealVector& v);

struct OptimizerResult {
  Bits bound;
  DensityMatrix sigma_opt;
  int iterations = 0;
  bool converged = false;
  double final_grad_map_norm = 0.0;  // upper bound on ||P(sigma + G) - sigma||_F
  bool line_search_stalled = false;  // stopped because no trial step decreased the objective
};

struct SearchHints {
  // Starting point; projected onto the PPT set. Defaults to I/d.
  std::optional<ComplexMatrix> initial;
  // Applied to every accepted candidate; must map PPT states to PPT states.
  std::function<ComplexMatrix(const ComplexMatrix&)> symmetrize;
};

// B(rho) = min over PPT sigma of S(rho || sigma), by projected gradient with
// Barzilai-Borwein step lengths and a nonmonotone Armijo search along the
// segment to the projected point. Candidates with infinite objective are
// rejected by the line search. The returned sigma is nudged towards I/d just enough to be PSD
// and PPT to rounding, so `bound` is the objective at a feasible point.
OptimizerResult minimize_rel_entropy(const DensityMatrix& rho, const OptimizerConfig& cfg = {},
                                     const SearchHints& hints = {});

// Mixes m with I/d until both m and m^Gamma have nonnegative spectrum.
ComplexMatrix repair_feasibility(const ComplexMatrix& m, BipartiteDims dims);

}  // namespace rains
