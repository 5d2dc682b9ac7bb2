#include <doctest.h>

#include <cmath>

#include "rains/entropy.hpp"
#include "rains/errors.hpp"
#include "rains/formulas.hpp"
#include "rains/pptopt.hpp"
#include "rains/states.hpp"
#include "test_support.hpp"

using namespace rains;

namespace {

double binary_form(double a) { return 1 + a * std::log2(a) + (1 - a) * std::log2(1 - a); }

}  // namespace

TEST_SUITE("pptopt") {

TEST_CASE("config validation") {
  OptimizerConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.armijo_c = 1.0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = {};
  cfg.backtrack_ratio = 0.0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = {};
  cfg.grad_map_tol = -1;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = {};
  cfg.max_iters = 0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  CHECK_THROWS_AS(minimize_rel_entropy(isotropic(2, 0.9), cfg), DomainError);
}

TEST_CASE("is_ppt examples") {
  const PptReport mixed = is_ppt(DensityMatrix::maximally_mixed({2, 2}), 1e-12);
  CHECK(mixed.ppt);
  CHECK(mixed.min_eig == doctest::Approx(0.25));
  for (int k : {2, 3}) {
    const PptReport bell = is_ppt(isotropic(k, 1.0), 1e-12);
    CHECK_FALSE(bell.ppt);
    CHECK(bell.min_eig == doctest::Approx(-1.0 / k).epsilon(1e-13));
  }
  const PptReport s = is_ppt(counterexample_pair().sigma, 1e-10);
  CHECK(s.ppt);
  CHECK(std::abs(s.min_eig) <= 1e-10);
}

TEST_CASE("project_simplex and project_density") {
  RealVector v(3);
  v << 0.5, 0.5, 0.5;
  RealVector p = project_simplex(v);
  for (int i = 0; i < 3; ++i) CHECK(p(i) == doctest::Approx(1.0 / 3));
  v << 2.0, 0.0, -1.0;
  p = project_simplex(v);
  CHECK(p(0) == doctest::Approx(1.0));
  CHECK(p(1) == 0.0);
  CHECK(p(2) == 0.0);

  const ComplexMatrix h = test::random_hermitian(4);
  const ComplexMatrix d = project_density(h);
  CHECK(std::abs(d.trace() - 1.0) < 1e-12);
  CHECK(min_eigenvalue(d) >= -1e-14);
  // optimality: <h - d, x - d> <= 0 for feasible x
  for (int t = 0; t < 20; ++t) {
    const ComplexMatrix x = test::random_density_matrix(4);
    CHECK(frobenius_inner(h - d, x - d) <= 1e-12);
  }
}

TEST_CASE("project_ppt fixes PPT states") {
  OptimizerConfig cfg;
  for (int t = 0; t < 10; ++t) {
    const auto p = test::random_simplex(4);
    std::array<double, 4> w{p[0], p[1], p[2], p[3]};
    for (double& x : w) x = std::min(x, 0.5);
    double s = w[0] + w[1] + w[2] + w[3];
    for (double& x : w) x /= s;
    if (*std::max_element(w.begin(), w.end()) > 0.5) continue;
    const DensityMatrix r = bell_diagonal(w);
    const ProjectionResult pr = project_ppt(r.matrix(), r.dims(), cfg);
    CHECK(pr.converged);
    CHECK((pr.sigma - r.matrix()).norm() <= 1e-9);
  }
  const ProjectionResult pr = project_ppt(ComplexMatrix::Identity(9, 9) / 9.0, {3, 3}, cfg);
  CHECK((pr.sigma - ComplexMatrix::Identity(9, 9) / 9.0).norm() <= 1e-9);
}

TEST_CASE("project_ppt of the Bell projector matches an isotropic grid search") {
  OptimizerConfig cfg;
  const ComplexMatrix p = maximally_entangled_projector(2);
  const ProjectionResult pr = project_ppt(p, {2, 2}, cfg);
  REQUIRE(pr.converged);
  // nearest PPT isotropic state by fine grid over F in [0, 1/2]
  double best = 1e9, best_f = 0;
  for (int s = 0; s <= 500000; ++s) {
    const double f = 0.5 * s / 500000;
    const double d = (isotropic(2, f).matrix() - p).norm();
    if (d < best) best = d, best_f = f;
  }
  CHECK((pr.sigma - isotropic(2, best_f).matrix()).norm() <= 1e-5);
  CHECK((pr.sigma - p).norm() == doctest::Approx(best).epsilon(1e-8));
  CHECK(is_ppt(pr.sigma, {2, 2}, 1e-10).ppt);
}

TEST_CASE("project_ppt is idempotent and feasible") {
  OptimizerConfig cfg;
  for (int t = 0; t < 10; ++t) {
    const BipartiteDims d{2, 2 + t % 2};
    const ComplexMatrix h = test::random_hermitian(d.total());
    const ProjectionResult once = project_ppt(h, d, cfg);
    const ProjectionResult twice = project_ppt(once.sigma, d, cfg);
    CHECK(once.converged);
    CHECK((once.sigma - twice.sigma).norm() <= 1e-8);
    CHECK(std::abs(once.sigma.trace() - 1.0) < 1e-12);
    CHECK(min_eigenvalue(once.sigma) >= -1e-9);
    CHECK(min_eigenvalue(partial_transpose(once.sigma, d)) >= -1e-9);
  }
  CHECK_THROWS_AS(project_ppt(ComplexMatrix::Identity(4, 4), {2, 3}, cfg), DimensionError);
}

TEST_CASE("optimizer examples") {
  const OptimizerResult ppt = minimize_rel_entropy(DensityMatrix::maximally_mixed({2, 2}));
  CHECK(ppt.converged);
  CHECK(std::abs(ppt.bound.value) <= 1e-12);
  CHECK((ppt.sigma_opt.matrix() - ComplexMatrix::Identity(4, 4) / 4.0).norm() < 1e-12);

  const double expect = binary_form(0.75);
  CHECK(expect == doctest::Approx(0.188722).epsilon(1e-6));
  const OptimizerResult iso = minimize_rel_entropy(isotropic(2, 0.75));
  CHECK(iso.converged);
  CHECK(std::abs(iso.bound.value - expect) <= 1e-5);
  const OptimizerResult bell = minimize_rel_entropy(bell_diagonal({0.75, 0.25, 0, 0}));
  CHECK(bell.converged);
  CHECK(std::abs(bell.bound.value - expect) <= 1e-5);
}

TEST_CASE("optimizer output invariants and upper bound by reference sigmas") {
  OptimizerConfig cfg;
  for (int t = 0; t < 8; ++t) {
    const DensityMatrix rho = test::random_state({2, 2});
    const OptimizerResult res = minimize_rel_entropy(rho, cfg);
    CHECK(res.converged);
    CHECK(is_ppt(res.sigma_opt, 1e-8).ppt);
    CHECK(res.bound.value >= -1e-8);
    CHECK(res.bound.value <=
          relative_entropy(rho, DensityMatrix::maximally_mixed({2, 2})).value + 1e-6);
    const DensityMatrix twirled =
        project_ppt(bell_twirl(rho, cyclic_group(2)).matrix(), {2, 2}, cfg).state({2, 2});
    CHECK(res.bound.value <= relative_entropy(rho, twirled).value + 1e-6);
    // the returned bound is the objective at the returned sigma
    CHECK(res.bound.value == doctest::Approx(relative_entropy(rho, res.sigma_opt).value).epsilon(1e-12));
  }
}

TEST_CASE("converged optimizer output carries a passing certificate") {
  for (int t = 0; t < 6; ++t) {
    const DensityMatrix rho = test::random_state({2, 2});
    if (is_ppt(rho, 1e-12).ppt) continue;
    const OptimizerResult res = minimize_rel_entropy(rho);
    REQUIRE(res.converged);
    const KktReport rep = kkt_check(rho, res.sigma_opt, 1e-6);
    CHECK(rep.passed);
  }
}

TEST_CASE("iteration cap reports non-convergence") {
  OptimizerConfig cfg;
  cfg.max_iters = 1;
  const OptimizerResult res = minimize_rel_entropy(pure_state(std::vector<double>{0.8, 0.2}), cfg);
  CHECK_FALSE(res.converged);
  CHECK(res.iterations <= 1);
  CHECK(is_ppt(res.sigma_opt, 1e-8).ppt);
}

TEST_CASE("restricting to twirl-invariant iterates does not change the bound") {
  const auto g = cyclic_group(2);
  SearchHints hints;
  hints.symmetrize = [g](const ComplexMatrix& m) { return bell_twirl(m, g); };
  for (const std::array<double, 4>& p :
       {std::array<double, 4>{0.7, 0.2, 0.1, 0.0}, std::array<double, 4>{0.9, 0.05, 0.03, 0.02}}) {
    const DensityMatrix rho = bell_diagonal(p);
    const OptimizerResult free_run = minimize_rel_entropy(rho);
    const OptimizerResult sym_run = minimize_rel_entropy(rho, {}, hints);
    CHECK(std::abs(free_run.bound.value - sym_run.bound.value) <= 1e-5);
  }
}

TEST_CASE("two-copy subadditivity") {
  for (const DensityMatrix& rho : {isotropic(2, 0.8), bell_diagonal({0.6, 0.3, 0.1, 0.0})}) {
    const double b1 = minimize_rel_entropy(rho).bound.value;
    const double b2 = minimize_rel_entropy(tensor(rho, rho)).bound.value;
    CHECK(b2 <= 2 * b1 + 1e-6);
  }
}

TEST_CASE("repair_feasibility") {
  const ComplexMatrix p = maximally_entangled_projector(2);
  const ComplexMatrix r = repair_feasibility(p, {2, 2});
  CHECK(min_eigenvalue(partial_transpose(r, {2, 2})) >= 0.0);
  CHECK(std::abs(r.trace() - 1.0) < 1e-14);
  const ComplexMatrix mixed = ComplexMatrix::Identity(4, 4) / 4.0;
  CHECK((repair_feasibility(mixed, {2, 2}) - mixed).norm() == 0.0);
}

}  // TEST_SUITE
