#include <doctest.h>

#include <cmath>

#include "rains/entropy.hpp"
#include "rains/errors.hpp"
#include "rains/formulas.hpp"
#include "rains/states.hpp"
#include "test_support.hpp"

using namespace rains;

namespace {

// S(rho||sigma) in bits using the series logarithm (definite sigma only).
double rel_entropy_oracle(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  const double s_rho = test::trace_rho_log(rho, rho);
  return (s_rho - test::trace_rho_log(rho, sigma)) / std::log(2.0);
}

}  // namespace

TEST_SUITE("entropy") {

TEST_CASE("Bits") {
  CHECK(Bits::from_nats(std::log(2.0)).value == doctest::Approx(1.0));
  CHECK_FALSE(Bits::infinity().is_finite());
  CHECK(Bits{2.0}.nats() == doctest::Approx(2 * std::log(2.0)));
}

TEST_CASE("fidelity examples") {
  for (int k : {2, 3}) {
    CHECK(fidelity(DensityMatrix(maximally_entangled_projector(k), {k, k})) ==
          doctest::Approx(1.0));
    CHECK(fidelity(DensityMatrix::maximally_mixed({k, k})) == doctest::Approx(1.0 / (k * k)));
    for (double f : {0.1, 0.5, 0.9}) CHECK(fidelity(isotropic(k, f)) == doctest::Approx(f));
  }
  CHECK_THROWS_AS(fidelity(DensityMatrix::maximally_mixed({2, 3})), DimensionError);
}

TEST_CASE("von_neumann_entropy examples") {
  CHECK(von_neumann_entropy(pure_state(std::vector<double>{0.6, 0.4})).value ==
        doctest::Approx(0.0).epsilon(1e-12));
  for (int d : {2, 3}) {
    CHECK(von_neumann_entropy(DensityMatrix::maximally_mixed({d, d})).value ==
          doctest::Approx(std::log2(d * d)));
  }
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = 0.75;
  m(1, 1) = 0.25;
  const double expect = -(0.75 * std::log2(0.75) + 0.25 * std::log2(0.25));
  CHECK(von_neumann_entropy(m).value == doctest::Approx(expect).epsilon(1e-14));
  CHECK(expect == doctest::Approx(0.811278).epsilon(1e-6));
}

TEST_CASE("shannon_entropy_bits") {
  CHECK(shannon_entropy_bits(std::vector<double>{1.0, 0.0}) == 0.0);
  CHECK(shannon_entropy_bits(std::vector<double>{0.5, 0.5}) == doctest::Approx(1.0));
}

TEST_CASE("relative_entropy examples") {
  for (int t = 0; t < 20; ++t) {
    const DensityMatrix rho = test::random_state({2, 2});
    CHECK(std::abs(relative_entropy(rho, rho).value) < 1e-12);
    const double expect = 2.0 - von_neumann_entropy(rho).value;
    CHECK(relative_entropy(rho, DensityMatrix::maximally_mixed({2, 2})).value ==
          doctest::Approx(expect).epsilon(1e-12));
  }
  for (int k : {2, 3}) {
    for (double f : {0.6, 0.75, 0.9}) {
      const ComplexMatrix p = maximally_entangled_projector(k);
      const ComplexMatrix sigma =
          p / (k + 1.0) + ComplexMatrix::Identity(k * k, k * k) / (k * (k + 1.0));
      const double expect =
          std::log2(k) + f * std::log2(f) + (1 - f) * std::log2((1 - f) / (k - 1));
      CHECK(relative_entropy(isotropic(k, f), DensityMatrix(sigma, {k, k})).value ==
            doctest::Approx(expect).epsilon(1e-12));
    }
  }
}

TEST_CASE("relative_entropy is infinite off support") {
  ComplexMatrix s = ComplexMatrix::Zero(4, 4);
  s(0, 0) = 1.0;
  const DensityMatrix sigma(s, {2, 2});
  CHECK_FALSE(relative_entropy(DensityMatrix::maximally_mixed({2, 2}), sigma).is_finite());
  // on support: finite
  CHECK(relative_entropy(sigma, DensityMatrix::maximally_mixed({2, 2})).value ==
        doctest::Approx(2.0));
  CHECK_THROWS_AS(relative_entropy(DensityMatrix::maximally_mixed({2, 2}),
                                   DensityMatrix::maximally_mixed({2, 3})),
                  DimensionError);
}

TEST_CASE("relative_entropy agrees with a series-logarithm oracle") {
  for (int t = 0; t < 20; ++t) {
    const ComplexMatrix r = test::random_density_matrix(4);
    const ComplexMatrix s = test::random_density_matrix(4);
    CHECK(relative_entropy(r, s).value == doctest::Approx(rel_entropy_oracle(r, s)).epsilon(1e-8));
  }
}

TEST_CASE("Klein inequality on 1000 random pairs") {
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const int n = 2 + t % 5;
    const ComplexMatrix r = test::random_density_matrix(n);
    const ComplexMatrix s = test::random_density_matrix(n);
    worst = std::min(worst, relative_entropy(r, s).value);
  }
  CHECK(worst >= 0.0);
  // equality only at rho = sigma
  const ComplexMatrix r = test::random_density_matrix(3);
  const ComplexMatrix near = 0.999 * r + 0.001 * ComplexMatrix::Identity(3, 3) / 3.0;
  CHECK(relative_entropy(r, near).value > 1e-8);
}

TEST_CASE("convexity in the second argument") {
  for (int t = 0; t < 100; ++t) {
    const ComplexMatrix r = test::random_density_matrix(4);
    const ComplexMatrix s1 = test::random_density_matrix(4);
    const ComplexMatrix s2 = test::random_density_matrix(4);
    for (double a : {0.25, 0.5, 0.75}) {
      const double lhs = relative_entropy(r, a * s1 + (1 - a) * s2).value;
      const double rhs =
          a * relative_entropy(r, s1).value + (1 - a) * relative_entropy(r, s2).value;
      CHECK(lhs <= rhs + 1e-10);
    }
  }
}

TEST_CASE("additivity over tensor products") {
  for (int t = 0; t < 50; ++t) {
    const DensityMatrix r1 = test::random_state({2, 2}), s1 = test::random_state({2, 2});
    const DensityMatrix r2 = test::random_state({2, 3}), s2 = test::random_state({2, 3});
    const double joint = relative_entropy(tensor(r1, r2), tensor(s1, s2)).value;
    CHECK(joint == doctest::Approx(relative_entropy(r1, s1).value + relative_entropy(r2, s2).value)
                       .epsilon(1e-8));
  }
}

}  // TEST_SUITE
