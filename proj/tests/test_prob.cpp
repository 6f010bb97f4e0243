#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "oracles.hpp"
#include "orci/prob.hpp"

using namespace orci;

TEST_CASE("binomial pmf basics") {
  CHECK(binomial_pmf(0, 5, 0.0) == 1.0);      // 0^0 = 1
  CHECK(binomial_pmf(3, 5, 0.0) == 0.0);
  CHECK(binomial_pmf(5, 5, 1.0) == 1.0);
  CHECK_THAT(binomial_pmf(2, 4, 0.5), Catch::Matchers::WithinAbs(0.375, 1e-15));
  // C(60,30)/2^60, frozen from exact big-integer arithmetic
  CHECK_THAT(binomial_pmf(30, 60, 0.5),
             Catch::Matchers::WithinRel(0.10257817300856951, 1e-12));
}

TEST_CASE("binomial pmf stays finite for large n") {
  // central term of Bin(10^4, 1/2); reference from the Stirling series
  const double v = binomial_pmf(5000, 10000, 0.5);
  const double stirling = 1.0 / std::sqrt(std::acos(-1.0) * 5000.0) * (1.0 - 1.0 / 40000.0);
  CHECK_THAT(v, Catch::Matchers::WithinRel(stirling, 1e-6));
}

TEST_CASE("binomial pmf properties") {
  // symmetry k <-> n-k, p <-> 1-p
  for (int k = 0; k <= 7; ++k)
    CHECK_THAT(binomial_pmf(k, 7, 0.3),
               Catch::Matchers::WithinRel(binomial_pmf(7 - k, 7, 0.7), 1e-13));
  double total = 0.0;
  for (int k = 0; k <= 13; ++k) total += binomial_pmf(k, 13, 0.37);
  CHECK_THAT(total, Catch::Matchers::WithinAbs(1.0, 1e-12));
}

TEST_CASE("binomial pmf domain errors") {
  CHECK_THROWS_AS(binomial_pmf(-1, 5, 0.5), domain_error);
  CHECK_THROWS_AS(binomial_pmf(6, 5, 0.5), domain_error);
  CHECK_THROWS_AS(binomial_pmf(2, 5, 1.2), domain_error);
  CHECK_THROWS_AS(binomial_pmf(0, 0, 0.5), domain_error);
}

TEST_CASE("joint probability at fixed nuisance proportion") {
  // r = 1 forces p_B = p_A: independent fair coins
  CHECK_THAT(joint_prob_at_pa(1.0, 0.5, {1, 1, 1, 1}),
             Catch::Matchers::WithinAbs(0.25, 1e-14));
  // r = 1, any p: product of the two pmfs at the same p
  CHECK_THAT(joint_prob_at_pa(1.0, 0.3, {5, 7, 2, 4}),
             Catch::Matchers::WithinRel(binomial_pmf(2, 5, 0.3) * binomial_pmf(4, 7, 0.3),
                                        1e-13));
  // r = 2, p_A = 1/2: p_B = 1/3 by hand
  CHECK_THAT(joint_prob_at_pa(2.0, 0.5, {1, 1, 1, 1}),
             Catch::Matchers::WithinRel(0.5 / 3.0, 1e-13));
  CHECK_THROWS_AS(joint_prob_at_pa(0.0, 0.5, {1, 1, 1, 1}), domain_error);
  CHECK_THROWS_AS(joint_prob_at_pa(1.0, 1.0, {1, 1, 1, 1}), domain_error);
}

TEST_CASE("outcome probability matches the r=1 closed form") {
  CHECK_THAT(outcome_prob(1.0, {1, 1, 1, 0}),
             Catch::Matchers::WithinAbs(1.0 / 6.0, 1e-10));
  CHECK_THAT(outcome_prob(1.0, {2, 2, 1, 1}),
             Catch::Matchers::WithinAbs(2.0 / 15.0, 1e-10));
  for (int na = 1; na <= 6; ++na)
    for (int nb = 1; nb <= 6; ++nb)
      for (int k1 = 0; k1 <= na; ++k1)
        for (int k2 = 0; k2 <= nb; ++k2) {
          const TwoArmCounts c{na, nb, k1, k2};
          REQUIRE_THAT(outcome_prob(1.0, c),
                       Catch::Matchers::WithinAbs(oracles::outcome_prob_r1(c), 1e-10));
        }
}

TEST_CASE("outcome probabilities sum to one") {
  for (double r : {0.5, 1.0, 2.0}) {
    double total = 0.0;
    for (int k1 = 0; k1 <= 5; ++k1)
      for (int k2 = 0; k2 <= 5; ++k2) total += outcome_prob(r, {5, 5, k1, k2});
    CHECK_THAT(total, Catch::Matchers::WithinAbs(1.0, 1e-8));
  }
}

TEST_CASE("interior outcomes vanish at extreme odds ratios") {
  for (int k1 = 1; k1 <= 4; ++k1)
    for (int k2 = 1; k2 <= 4; ++k2) {
      CHECK(outcome_prob(1e-6, {5, 5, k1, k2}) < 1e-3);
      CHECK(outcome_prob(1e6, {5, 5, k1, k2}) < 1e-3);
    }
}

TEST_CASE("regularized hypergeometric special values") {
  // t = 0 or x = 0 collapse the Euler integral to Beta(y, z-y): value 1/Gamma(z)
  CHECK_THAT(gauss_2f1_regularized(3.0, 2.0, 5.0, 0.0),
             Catch::Matchers::WithinRel(1.0 / 24.0, 1e-10));
  CHECK_THAT(gauss_2f1_regularized(0.0, 1.5, 4.0, -2.0),
             Catch::Matchers::WithinRel(1.0 / 6.0, 1e-10));
}

TEST_CASE("regularized hypergeometric against a fixed-order oracle") {
  // (x,y,z,t) = (2,1,3,0.5): integrand (1-u)(1-u/2)^-2, prefactor 1
  const auto integrand = [](double u) {
    return (1.0 - u) * std::pow(1.0 - 0.5 * u, -2.0);
  };
  const double oracle = oracles::simpson(integrand, 0.0, 1.0, 20000);
  const double v = gauss_2f1_regularized(2.0, 1.0, 3.0, 0.5);
  CHECK_THAT(v, Catch::Matchers::WithinRel(oracle, 1e-9));
  // frozen reference: 4 ln 2 - 2
  CHECK_THAT(v, Catch::Matchers::WithinRel(0.7725887222397811, 1e-10));
}

TEST_CASE("regularized hypergeometric domain errors") {
  CHECK_THROWS_AS(gauss_2f1_regularized(1.0, 2.0, 2.0, 0.5), domain_error);  // z == y
  CHECK_THROWS_AS(gauss_2f1_regularized(1.0, 0.0, 2.0, 0.5), domain_error);  // y == 0
  CHECK_THROWS_AS(gauss_2f1_regularized(1.0, 1.0, 2.0, 1.0), domain_error);  // t == 1
}

TEST_CASE("hypergeometric path mirrors the quadrature path") {
  CHECK_THAT(outcome_prob_hypergeom(1.0, {2, 2, 1, 1}),
             Catch::Matchers::WithinAbs(2.0 / 15.0, 1e-10));
  CHECK_THAT(outcome_prob_hypergeom(2.0, {2, 2, 1, 1}),
             Catch::Matchers::WithinAbs(outcome_prob(2.0, {2, 2, 1, 1}), 1e-8));
  CHECK_THAT(outcome_prob_hypergeom(0.5, {5, 5, 2, 3}),
             Catch::Matchers::WithinAbs(outcome_prob(0.5, {5, 5, 2, 3}), 1e-8));
}
