#include <doctest.h>

#include <cmath>

#include "rains/errors.hpp"
#include "rains/formulas.hpp"
#include "rains/kkt.hpp"
#include "rains/states.hpp"
#include "test_support.hpp"

using namespace rains;

namespace {

DensityMatrix isotropic_optimum(int k) {
  const ComplexMatrix s = maximally_entangled_projector(k) / (k + 1.0) +
                          ComplexMatrix::Identity(k * k, k * k) / (k * (k + 1.0));
  return DensityMatrix(s, {k, k});
}

DensityMatrix basis_projector(int index) {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(index, index) = 1.0;
  return DensityMatrix(m, {2, 2});
}

}  // namespace

TEST_SUITE("kkt") {

TEST_CASE("certificate examples") {
  const StatePair pr = counterexample_pair();
  const KktReport single = kkt_check(pr.rho, pr.sigma);
  CHECK(single.passed);
  CHECK(single.complementarity_residual <= 1e-8);
  CHECK(single.k_gamma_min_eig >= -1e-8);

  const KktReport twice = kkt_check(tensor(pr.rho, pr.rho), tensor(pr.sigma, pr.sigma));
  CHECK_FALSE(twice.passed);

  for (int k : {2, 3}) {
    const KktReport iso = kkt_check(isotropic(k, 0.9), isotropic_optimum(k));
    CHECK(iso.passed);
  }
  const DensityMatrix mixed = DensityMatrix::maximally_mixed({2, 2});
  const KktReport trivial = kkt_check(mixed, mixed);
  CHECK(trivial.passed);
  CHECK(trivial.complementarity_residual <= 1e-15);
  CHECK(std::abs(trivial.k_gamma_min_eig) <= 1e-15);
}

TEST_CASE("K^Gamma spectrum of the single-copy certificate") {
  const StatePair pr = counterexample_pair();
  const KktReport rep = kkt_check(pr.rho, pr.sigma);
  const RealVector ev = eigenvalues_hermitian(partial_transpose(rep.k_matrix, {2, 2}));
  CHECK(std::abs(ev(0)) <= 1e-10);
  CHECK(std::abs(ev(1)) <= 1e-10);
  CHECK(std::abs(ev(2)) <= 1e-10);
  CHECK(ev(3) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("suboptimal sigma fails") {
  CHECK_FALSE(kkt_check(isotropic(2, 0.9), DensityMatrix::maximally_mixed({2, 2})).passed);
  const KktReport off = kkt_check(isotropic(2, 0.9), isotropic(2, 0.4));
  CHECK_FALSE(off.passed);
}

TEST_CASE("error paths") {
  CHECK_THROWS_AS(kkt_check(isotropic(2, 0.9), isotropic(2, 0.9)), DomainError);
  CHECK_THROWS_AS(kkt_check(DensityMatrix::maximally_mixed({2, 2}), basis_projector(0)),
                  InfiniteEntropyError);
  CHECK_THROWS_AS(kkt_check(basis_projector(1), basis_projector(1)), SemidefiniteSigmaError);
  CHECK_THROWS_AS(kkt_check(isotropic(2, 0.9), DensityMatrix::maximally_mixed({2, 3})),
                  DimensionError);
}

TEST_CASE("passed matches its definition") {
  for (int t = 0; t < 20; ++t) {
    const DensityMatrix rho = test::random_state({2, 2});
    const DensityMatrix sigma = DensityMatrix(
        0.5 * test::random_density_matrix(4) + 0.5 * ComplexMatrix::Identity(4, 4) / 4.0, {2, 2});
    if (!is_ppt(sigma, 0.0).ppt) continue;
    for (double tol : {1e-8, 1e-2, 1.0}) {
      const KktReport r = kkt_check(rho, sigma, tol);
      CHECK(r.passed == (r.complementarity_residual <= tol && r.k_gamma_min_eig >= -tol));
    }
  }
}

TEST_CASE("maximally correlated certificate examples") {
  ComplexMatrix bell(2, 2);
  bell << 0.5, 0.5, 0.5, 0.5;
  const KktReport b = kkt_check_maxcorr(bell);
  CHECK(b.passed);
  REQUIRE(b.semidefinite);
  CHECK(log_divided_difference(0.5, 0.5) == doctest::Approx(2.0));
  CHECK(b.semidefinite->max_pair_ratio == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(b.semidefinite->l_matrix(1, 1)) <= 1e-14);  // lambda_01 = 0

  ComplexMatrix diag = ComplexMatrix::Zero(3, 3);
  diag(0, 0) = 0.2;
  diag(1, 1) = 0.3;
  diag(2, 2) = 0.5;
  const KktReport d = kkt_check_maxcorr(diag);
  CHECK(d.passed);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) CHECK(std::abs(d.k_matrix(i * 3 + i, j * 3 + j)) == 0.0);

  // zero diagonal entry
  ComplexMatrix edge = ComplexMatrix::Zero(3, 3);
  edge(0, 0) = 0.5;
  edge(1, 1) = 0.5;
  edge(0, 1) = edge(1, 0) = 0.3;
  CHECK(kkt_check_maxcorr(edge).passed);

  CHECK_THROWS_AS(kkt_check_maxcorr(ComplexMatrix::Identity(2, 2)), DomainError);
}

TEST_CASE("maximally correlated certificates on random alpha") {
  for (int t = 0; t < 20; ++t) {
    const int k = 2 + t % 2;
    const ComplexMatrix alpha = test::random_density_matrix(k);
    const KktReport rep = kkt_check_maxcorr(alpha);
    CHECK(rep.passed);
    CHECK(rep.semidefinite->scalar_route_ok);
    CHECK(rep.semidefinite->decomposition_residual <= 1e-8);
    // kkt_check routes singular sigma here
    const ClosedFormResult cf = maxcorr_bound(alpha);
    const KktReport routed = kkt_check(max_correlated(alpha), *cf.sigma_opt);
    CHECK(routed.passed);
    CHECK(routed.semidefinite.has_value());
  }
}

TEST_CASE("additivity checker") {
  const DensityMatrix ppt = bell_diagonal({0.4, 0.3, 0.2, 0.1});
  const AdditivityReport same = additivity_check(ppt, ppt);
  CHECK(same.commutes);
  CHECK(same.grad_pt_min_eig == doctest::Approx(1.0));
  CHECK(same.additive_universal);
  CHECK(same.additive_self);

  for (int k : {2, 3}) {
    for (double f : {0.6, 0.75, 0.9, 1.0}) {
      if (f < 1.0 / k) continue;
      const AdditivityReport iso = additivity_check(isotropic(k, f), isotropic_optimum(k));
      CHECK(iso.commutes);
      CHECK(iso.additive_self);
      CHECK(iso.grad_pt_min_eig >= -1 - 1e-8);
    }
  }
  const StatePair pr = counterexample_pair();
  const AdditivityReport ce = additivity_check(pr.rho, pr.sigma);
  CHECK_FALSE(ce.additive_self);
  CHECK_FALSE(ce.additive_universal);
}

}  // TEST_SUITE
