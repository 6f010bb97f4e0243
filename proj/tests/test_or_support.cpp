#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <future>
#include <vector>

#include "oracles.hpp"
#include "orci/distribution.hpp"

using namespace orci;

TEST_CASE("extended odds ratio case analysis") {
  // interior: Table-2-style counts give (6/54)*(56/14) = 4/9
  const auto v = extended_or({60, 70, 6, 14});
  CHECK(v == ExtendedOddsRatio::rational(4, 9));
  CHECK_THAT(v.value(), Catch::Matchers::WithinAbs(0.4444, 5e-5));
  // the two degenerate corners are 1
  CHECK(extended_or({60, 70, 0, 0}).is_one());
  CHECK(extended_or({60, 70, 60, 70}).is_one());
  // zero branch
  CHECK(extended_or({60, 70, 0, 5}).is_zero());
  CHECK(extended_or({60, 70, 10, 70}).is_zero());
  // infinite branch, including the all-A-no-B corner the ratio leaves 0/0
  CHECK(extended_or({60, 70, 3, 0}).is_infinite());
  CHECK(extended_or({60, 70, 60, 5}).is_infinite());
  CHECK(extended_or({60, 70, 60, 0}).is_infinite());
  // interior tie with 1
  CHECK(extended_or({4, 6, 2, 3}).is_one());
}

TEST_CASE("extended odds ratio exact ordering") {
  using R = ExtendedOddsRatio;
  CHECK(R::rational(1, 3) < R::rational(1, 2));
  CHECK(R::rational(2, 4) == R::rational(1, 2));
  CHECK(R::zero() < R::rational(1, 1000000));
  CHECK(R::rational(1000000, 1) < R::infinity());
  CHECK(R::zero() < R::one());
  CHECK(R::one() < R::infinity());
  CHECK(R::infinity() == R::infinity());
  // a tie that would be lost in floating point: 10/3 vs 6602346876188061/1980704062856418
  CHECK(R::rational(3002399751580331LL, 900719925474099LL) > R::rational(10, 3));
  CHECK_THROWS_AS(R::rational(-1, 2), domain_error);
  CHECK_THROWS_AS(R::rational(0, 0), domain_error);
}

TEST_CASE("distribution at r=1 for the 3x3 table") {
  const OutcomeDistribution dist(1.0, 2, 2);
  REQUIRE(dist.entries().size() == 9);
  REQUIRE(dist.support().size() == 3);  // {0, 1, inf}
  CHECK(dist.support()[0].is_zero());
  CHECK(dist.support()[1].is_one());
  CHECK(dist.support()[2].is_infinite());
  // enumeration with the r=1 closed form: mass 7/30, 8/15, 7/30
  CHECK_THAT(dist.mass_at(ExtendedOddsRatio::zero()),
             Catch::Matchers::WithinAbs(7.0 / 30.0, 1e-9));
  CHECK_THAT(dist.mass_at(ExtendedOddsRatio::one()),
             Catch::Matchers::WithinAbs(8.0 / 15.0, 1e-9));
  CHECK_THAT(dist.mass_at(ExtendedOddsRatio::infinity()),
             Catch::Matchers::WithinAbs(7.0 / 30.0, 1e-9));
  CHECK_THAT(dist.total(), Catch::Matchers::WithinAbs(1.0, 1e-8));

  // G at the smallest positive support point picks up exactly the zero atom
  CHECK_THAT(dist.cdf_strict(ExtendedOddsRatio::one()),
             Catch::Matchers::WithinAbs(7.0 / 30.0, 1e-9));
  // F just below the smallest positive support point does too
  CHECK_THAT(dist.cdf(ExtendedOddsRatio::rational(99, 100)),
             Catch::Matchers::WithinAbs(7.0 / 30.0, 1e-9));
  CHECK(dist.cdf(ExtendedOddsRatio::infinity()) == dist.total());
  CHECK(dist.cdf_strict(ExtendedOddsRatio::rational(1, 1000000)) ==
        dist.cdf(ExtendedOddsRatio::zero()));
}

TEST_CASE("strict and non-strict CDFs differ by the atom") {
  const auto dist = outcome_distribution(2.0, 3, 3);
  for (const auto& t : dist->support()) {
    const double f = dist->cdf(t);
    const double g = dist->cdf_strict(t);
    CHECK(g <= f);
    CHECK_THAT(f - g, Catch::Matchers::WithinAbs(dist->mass_at(t), 1e-12));
  }
  // off-support query carries no atom
  const auto t = ExtendedOddsRatio::rational(7919, 7920);
  CHECK(dist->cdf(t) == dist->cdf_strict(t));
}

TEST_CASE("CDF is monotone in t") {
  const auto dist = outcome_distribution(2.0, 5, 5);
  double prev = 0.0;
  for (std::size_t i = 0; i < dist->support().size(); ++i) {
    CHECK(dist->cdf_at_index(i) >= prev);
    prev = dist->cdf_at_index(i);
  }
}

TEST_CASE("support shape") {
  const auto dist = outcome_distribution(1.5, 4, 7);
  CHECK(dist->entries().size() == 5 * 8);
  CHECK(dist->support().size() <= dist->entries().size());
  CHECK(std::is_sorted(dist->support().begin(), dist->support().end()));
  CHECK(dist->support().front().is_zero());
  CHECK(dist->support().back().is_infinite());
  CHECK(dist->mass_at(ExtendedOddsRatio::one()) > 0.0);
}

TEST_CASE("stochastic ordering in r") {
  const std::vector<double> rs{0.25, 0.5, 1.0, 2.0, 4.0};
  const auto base = outcome_distribution(rs[0], 6, 7);
  for (std::size_t i = 0; i + 1 < rs.size(); ++i) {
    const auto lo = outcome_distribution(rs[i], 6, 7);
    const auto hi = outcome_distribution(rs[i + 1], 6, 7);
    for (const auto& t : base->support())
      CHECK(lo->cdf(t) >= hi->cdf(t) - 1e-9);
  }
}

TEST_CASE("atom limits at extreme r") {
  // as r -> 0 the zero atom carries n_a/(n_a+1) and the one atom 1/(n_a+1);
  // as r -> inf the zero atom drains and the one atom keeps 1/(n_a+1)
  CHECK_THAT(prob_or_zero(1e-6, 10, 10), Catch::Matchers::WithinAbs(10.0 / 11.0, 1e-3));
  CHECK_THAT(prob_or_zero(1e6, 10, 10), Catch::Matchers::WithinAbs(0.0, 1e-3));
  CHECK_THAT(prob_or_one(1e-6, 10, 10), Catch::Matchers::WithinAbs(1.0 / 11.0, 1e-3));
  CHECK_THAT(prob_or_one(1e6, 10, 10), Catch::Matchers::WithinAbs(1.0 / 11.0, 1e-3));
}

TEST_CASE("CDF limits used by the sidedness theorem") {
  const auto below_one = ExtendedOddsRatio::rational(1, 2);
  const auto above_one = ExtendedOddsRatio::rational(3, 2);
  CHECK_THAT(cdf_F(1e-6, below_one, 6, 7), Catch::Matchers::WithinAbs(6.0 / 7.0, 1e-3));
  CHECK_THAT(cdf_F(1e6, below_one, 6, 7), Catch::Matchers::WithinAbs(0.0, 1e-3));
  CHECK_THAT(cdf_F(1e6, above_one, 6, 7), Catch::Matchers::WithinAbs(1.0 / 7.0, 1e-3));
}

TEST_CASE("concurrent cache access") {
  std::vector<std::future<double>> jobs;
  for (int i = 0; i < 8; ++i) {
    jobs.push_back(std::async(std::launch::async, [i] {
      const double r = 0.5 + 0.25 * (i % 4);
      return cdf_F(r, ExtendedOddsRatio::one(), 5, 4);
    }));
  }
  std::vector<double> got;
  for (auto& j : jobs) got.push_back(j.get());
  for (int i = 0; i < 8; ++i)
    CHECK(got[i] == cdf_F(0.5 + 0.25 * (i % 4), ExtendedOddsRatio::one(), 5, 4));
}

TEST_CASE("distribution rejects invalid parameters") {
  CHECK_THROWS_AS(OutcomeDistribution(0.0, 3, 3), domain_error);
  CHECK_THROWS_AS(OutcomeDistribution(-1.0, 3, 3), domain_error);
  CHECK_THROWS_AS(OutcomeDistribution(1.0, 0, 3), domain_error);
}
