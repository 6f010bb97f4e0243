#pragma once

#include <cmath>
#include <vector>

#include "orci/exact_ci.hpp"
#include "orci/wald_ci.hpp"

namespace orci {

enum class CoverageMethod { exact_m, standard_s };
enum class GridSpacing { linear, logarithmic };

/// How the coverage of the exact interval is evaluated.
enum class ExactCoverageMode {
  duality,  // threshold tests on F_r/G_r at every support point; no root-finding
  direct,   // solve the interval per support value and test containment
};

struct CoveragePoint {
  double r = 0.0;
  double coverage = 0.0;
};

struct CoverageCurve {
  CoverageMethod method = CoverageMethod::exact_m;
  int n_a = 0;
  int n_b = 0;
  double level = 0.0;
  std::vector<CoveragePoint> points;
};

/// Exact (enumerated) coverage probability of the new interval at true
/// odds ratio r. In duality mode an outcome with estimator value t covers
/// r iff G_r(t) <= (1+gamma)/2 and F_r(t) >= (1-gamma)/2: r exceeds the
/// lower endpoint iff the first holds (degenerate lower ends satisfy it
/// for every r) and stays below the upper iff the second holds. Equality,
/// where the tested r is itself an endpoint, counts as covering. One
/// distribution evaluation at r decides every outcome at once.
inline double coverage_exact_at(double r, int n_a, int n_b, ConfidenceLevel level,
                                ExactCoverageMode mode = ExactCoverageMode::duality) {
  detail::require_odds_ratio(r);
  const auto dist = outcome_distribution(r, n_a, n_b);
  double covered = 0.0;
  if (mode == ExactCoverageMode::duality) {
    const double up = level.upper_tail_target();
    const double lo = level.lower_tail_target();
    for (std::size_t i = 0; i < dist->support().size(); ++i) {
      if (dist->cdf_strict_at_index(i) <= up && dist->cdf_at_index(i) >= lo)
        covered += dist->mass_at_index(i);
    }
  } else {
    for (std::size_t i = 0; i < dist->support().size(); ++i) {
      const OrInterval ci = exact_ci_for_or_hat(dist->support()[i], n_a, n_b, level);
      if (ci.left < r && r < ci.right) covered += dist->mass_at_index(i);
    }
  }
  return covered;
}

/// Exact coverage probability of the standard asymptotic interval at true
/// odds ratio r. Outcomes where the interval does not exist (a zero cell)
/// cover nothing.
inline double coverage_standard_at(double r, int n_a, int n_b, ConfidenceLevel level) {
  detail::require_odds_ratio(r);
  const auto dist = outcome_distribution(r, n_a, n_b);
  double covered = 0.0;
  for (const OutcomeEntry& e : dist->entries()) {
    const TwoArmCounts& c = e.counts;
    if (c.n_a1 == 0 || c.n_a0() == 0 || c.n_b1 == 0 || c.n_b0() == 0) continue;
    const OrInterval ci = standard_ci(c, level);
    if (ci.left < r && r < ci.right) covered += e.prob;
  }
  return covered;
}

/// Coverage along a grid of true odds ratios. Linear spacing matches the
/// figures' axes; logarithmic spacing is available for wide ranges.
inline CoverageCurve coverage_curve(CoverageMethod method, int n_a, int n_b,
                                    ConfidenceLevel level, double r_min, double r_max,
                                    int num_points, GridSpacing spacing = GridSpacing::linear) {
  if (!(r_min > 0.0) || !(r_min < r_max))
    throw domain_error("coverage_curve: requires 0 < r_min < r_max");
  if (num_points < 2) throw domain_error("coverage_curve: requires num_points >= 2");

  CoverageCurve curve{method, n_a, n_b, level.gamma(), {}};
  curve.points.reserve(num_points);
  const double log_min = std::log(r_min);
  const double log_step = (std::log(r_max) - log_min) / (num_points - 1);
  const double step = (r_max - r_min) / (num_points - 1);
  for (int i = 0; i < num_points; ++i) {
    double r;
    if (i == num_points - 1)
      r = r_max;  // land exactly on the right edge
    else if (spacing == GridSpacing::linear)
      r = r_min + i * step;
    else
      r = std::exp(log_min + i * log_step);
    const double cov = method == CoverageMethod::exact_m
                           ? coverage_exact_at(r, n_a, n_b, level)
                           : coverage_standard_at(r, n_a, n_b, level);
    curve.points.push_back({r, cov});
  }
  return curve;
}

}  // namespace orci
