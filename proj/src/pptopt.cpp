#include "rains/pptopt.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <string>

#include "rains/errors.hpp"

namespace rains {

void OptimizerConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0)) throw DomainError(std::string("optimizer config: ") + name + " must be > 0");
  };
  auto unit = [](double v, const char* name) {
    if (!(v > 0.0 && v < 1.0)) {
      throw DomainError(std::string("optimizer config: ") + name + " must lie in (0, 1)");
    }
  };
  if (max_iters < 1) throw DomainError("optimizer config: max_iters must be >= 1");
  if (dykstra_iters < 1) throw DomainError("optimizer config: dykstra_iters must be >= 1");
  if (obj_window < 1) throw DomainError("optimizer config: obj_window must be >= 1");
  if (max_backtracks < 1) throw DomainError("optimizer config: max_backtracks must be >= 1");
  positive(step_init, "step_init");
  unit(armijo_c, "armijo_c");
  unit(backtrack_ratio, "backtrack_ratio");
  positive(grad_map_tol, "grad_map_tol");
  positive(obj_tol, "obj_tol");
  positive(dykstra_tol, "dykstra_tol");
  positive(eig_floor, "eig_floor");
  if (nonmonotone_memory < 1) throw DomainError("optimizer config: nonmonotone_memory must be >= 1");
  positive(step_min, "step_min");
  if (!(step_max >= step_min)) throw DomainError("optimizer config: step_max must be >= step_min");
}

PptReport is_ppt(const ComplexMatrix& m, BipartiteDims dims, double tol) {
  const double lo = min_eigenvalue(partial_transpose(m, dims), 1e-9);
  return {lo >= -tol, lo};
}

PptReport is_ppt(const DensityMatrix& rho, double tol) {
  return is_ppt(rho.matrix(), rho.dims(), tol);
}

DensityMatrix ProjectionResult::state(BipartiteDims dims) const {
  return DensityMatrix(sigma, dims);
}

RealVector project_simplex(const RealVector& v) {
  const auto n = v.size();
  std::vector<double> u(v.data(), v.data() + n);
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumsum = 0.0;
  double theta = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    cumsum += u[k];
    const double t = (cumsum - 1.0) / static_cast<double>(k + 1);
    if (u[k] - t > 0.0) theta = t;
  }
  return (v.array() - theta).max(0.0).matrix();
}

ComplexMatrix project_density(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(m));
  const RealVector w = project_simplex(solver.eigenvalues());
  const ComplexMatrix& v = solver.eigenvectors();
  return hermitian_part(v * w.asDiagonal() * v.adjoint());
}

ProjectionResult project_ppt(const ComplexMatrix& m, BipartiteDims dims,
                             const OptimizerConfig& cfg) {
  DykstraCorrections fresh;
  return project_ppt(m, dims, cfg, fresh);
}

ProjectionResult project_ppt(const ComplexMatrix& m, BipartiteDims dims,
                             const OptimizerConfig& cfg, DykstraCorrections& corr) {
  if (m.rows() != m.cols() || m.rows() != dims.total()) {
    throw DimensionError("project_ppt: matrix dimension does not match bipartition");
  }
  if (!is_hermitian(m, 1e-9)) throw SymmetryError("project_ppt: input is not Hermitian");

  const auto n = m.rows();
  if (corr.p.rows() != n || corr.q.rows() != n) {
    corr.p = ComplexMatrix::Zero(n, n);
    corr.q = ComplexMatrix::Zero(n, n);
  }
  ComplexMatrix& p = corr.p;
  ComplexMatrix& q = corr.q;
  // Dykstra keeps x = m - p - q; reused corrections start from the same relation.
  ComplexMatrix x = hermitian_part(m) - p - q;
  ProjectionResult out;
  for (int cycle = 1; cycle <= cfg.dykstra_iters; ++cycle) {
    const ComplexMatrix y = project_density(x + p);
    p += x - y;
    const ComplexMatrix next =
        partial_transpose(project_density(partial_transpose(y + q, dims)), dims);
    q += y - next;
    const double step = (next - x).norm();
    out.residual = (next - y).norm();
    out.cycles = cycle;
    x = next;
    if (step <= cfg.dykstra_tol && out.residual <= cfg.dykstra_tol) {
      out.converged = true;
      break;
    }
  }
  out.sigma = std::move(x);
  return out;
}

ComplexMatrix repair_feasibility(const ComplexMatrix& m, BipartiteDims dims) {
  const auto n = static_cast<double>(m.rows());
  const double lo = std::min(min_eigenvalue(m, 1e-9), min_eigenvalue(partial_transpose(m, dims), 1e-9));
  ComplexMatrix out = hermitian_part(m);
  if (lo >= 0.0) return out;
  const double shifted = (lo - 1e-15) * n;
  const double eps = -shifted / (1.0 - shifted);
  out = (1.0 - eps) * out;
  out.diagonal().array() += eps / n;
  return out;
}

namespace {

struct Iterate {
  ComplexMatrix sigma;
  EigenDecomposition eig;
  double cross = 0.0;  // -Tr(rho ln sigma)
};

Iterate make_iterate(const ComplexMatrix& rho, ComplexMatrix sigma) {
  Iterate it;
  it.eig = eig_hermitian(sigma, 1e-9);
  it.cross = cross_entropy_nats(rho, it.eig);
  it.sigma = std::move(sigma);
  return it;
}

double entropy_nats(const ComplexMatrix& rho) {
  return von_neumann_entropy(rho).nats();
}

}  // namespace

OptimizerResult minimize_rel_entropy(const DensityMatrix& rho, const OptimizerConfig& cfg,
                                     const SearchHints& hints) {
  cfg.validate();
  const BipartiteDims dims = rho.dims();
  const ComplexMatrix& r = rho.matrix();
  const auto n = r.rows();

  // A PPT rho is its own minimizer with S = 0.
  if (is_ppt(rho, cfg.eig_floor).ppt) {
    const ComplexMatrix sigma = repair_feasibility(r, dims);
    return {Bits::from_nats(std::max(0.0, relative_entropy(r, sigma).nats())),
            DensityMatrix(sigma, dims), 0, true, 0.0};
  }

  const double s_rho = entropy_nats(r);
  auto symmetrized = [&](ComplexMatrix m) {
    return hints.symmetrize ? hermitian_part(hints.symmetrize(m)) : m;
  };

  const ComplexMatrix mixed = ComplexMatrix::Identity(n, n) / static_cast<double>(n);
  Iterate cur = make_iterate(r, symmetrized(mixed));
  if (hints.initial) {
    Iterate start =
        make_iterate(r, symmetrized(project_ppt(*hints.initial, dims, cfg).sigma));
    if (std::isfinite(start.cross)) cur = std::move(start);
  }

  std::deque<double> history{cur.cross - s_rho};
  std::deque<double> recent{cur.cross};
  DykstraCorrections corr;
  // Descent direction of -Tr(rho ln sigma) is +G.
  ComplexMatrix g = dd_gradient(r, cur.eig, cfg.eig_floor);
  double alpha = cfg.step_init;
  double grad_map = std::numeric_limits<double>::infinity();
  bool converged = false;
  bool stalled = false;
  int iter = 0;
  while (iter < cfg.max_iters) {
    ++iter;
    const ComplexMatrix trial =
        symmetrized(project_ppt(cur.sigma + alpha * g, dims, cfg, corr).sigma);
    const ComplexMatrix d = trial - cur.sigma;
    // ||P(x + t G) - x|| grows and ||P(x + t G) - x|| / t shrinks with t, so
    // this bounds the unit-step gradient mapping from above.
    grad_map = d.norm() / std::min(alpha, 1.0);
    if (grad_map <= cfg.grad_map_tol) {
      converged = true;
      break;
    }

    // Nonmonotone Armijo search on the feasible segment [cur, trial].
    const double slope = -frobenius_inner(g, d);
    const double reference = *std::max_element(recent.begin(), recent.end());
    double lambda = 1.0;
    bool accepted = false;
    Iterate cand;
    for (int bt = 0; bt < cfg.max_backtracks; ++bt, lambda *= cfg.backtrack_ratio) {
      cand = make_iterate(r, hermitian_part(cur.sigma + lambda * d));
      if (std::isfinite(cand.cross) &&
          cand.cross <= reference + cfg.armijo_c * lambda * slope) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      stalled = true;
      break;
    }

    // Barzilai-Borwein step from the change in sigma and in the gradient.
    ComplexMatrix g_next = dd_gradient(r, cand.eig, cfg.eig_floor);
    const ComplexMatrix s = cand.sigma - cur.sigma;
    const double sy = frobenius_inner(s, g - g_next);
    alpha = sy > 0.0 ? std::clamp(s.squaredNorm() / sy, cfg.step_min, cfg.step_max)
                     : cfg.step_max;
    g = std::move(g_next);
    cur = std::move(cand);

    recent.push_back(cur.cross);
    if (static_cast<int>(recent.size()) > cfg.nonmonotone_memory) recent.pop_front();
    const double obj = cur.cross - s_rho;
    history.push_back(obj);
    if (static_cast<int>(history.size()) > cfg.obj_window + 1) history.pop_front();
    if (static_cast<int>(history.size()) == cfg.obj_window + 1 &&
        std::abs(history.front() - obj) <= cfg.obj_tol * std::max(std::abs(obj), 1.0)) {
      converged = true;
      break;
    }
  }

  const ComplexMatrix sigma = repair_feasibility(cur.sigma, dims);
  const Bits bound = relative_entropy(r, sigma);
  return {bound, DensityMatrix(sigma, dims), iter, converged, grad_map, stalled};
}

}  // namespace rains
