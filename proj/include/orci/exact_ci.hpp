#pragma once

#include <cmath>
#include <limits>

#include "orci/distribution.hpp"

namespace orci {

inline constexpr double kRootBracketFloor = 1e-8;
inline constexpr double kRootRelWidth = 1e-6;
inline constexpr int kMaxBracketDoublings = 20;

namespace detail {

// 2/(1-gamma) - 1, snapped to the nearest integer when within rounding
// noise of one. The Theorem's condition compares an integer sample size
// against this bound, and the comparison must be exact when the bound is
// itself an integer (e.g. 39 at gamma = 0.95, 1999 at gamma = 0.999).
inline double sidedness_bound(ConfidenceLevel level) {
  const double x = 2.0 / (1.0 - level.gamma()) - 1.0;
  const double nearest = std::round(x);
  if (std::abs(x - nearest) <= 1e-9 * std::max(1.0, std::abs(x))) return nearest;
  return x;
}

// Solve h(r) = target for nonincreasing h on (0, inf).
// Returns 0 when h is already below target at the bracket floor (the root,
// if any, is indistinguishable from 0), and +inf when h stays above target
// after expanding the upper bracket by 2^kMaxBracketDoublings.
// Log-space bisection to relative width kRootRelWidth.
template <class H>
double solve_nonincreasing(H&& h, double target, double upper0) {
  double lo = kRootBracketFloor;
  if (h(lo) < target) return 0.0;
  double hi = std::max(upper0, 2.0 * lo);
  int doublings = 0;
  while (h(hi) >= target) {
    if (++doublings > kMaxBracketDoublings)
      return std::numeric_limits<double>::infinity();
    lo = hi;
    hi *= 2.0;
  }
  while (hi > lo * (1.0 + kRootRelWidth)) {
    const double mid = std::sqrt(lo * hi);
    if (h(mid) >= target)
      lo = mid;
    else
      hi = mid;
  }
  return std::sqrt(lo * hi);
}

}  // namespace detail

/// Whether the confidence interval is two-sided: n_a > 2/(1-gamma) - 1.
/// A sample size exactly at the bound counts as one-sided.
inline bool is_two_sided(int n_a, ConfidenceLevel level) {
  return static_cast<double>(n_a) > detail::sidedness_bound(level);
}

/// Smallest group-A size for which the interval is two-sided.
inline int minimal_sample_size(ConfidenceLevel level) {
  return static_cast<int>(std::floor(detail::sidedness_bound(level))) + 1;
}

/// Confidence interval for the odds ratio given the observed extended
/// estimator value. The endpoints invert the strict and non-strict CDFs:
///   left  solves G_r(r_hat) = (1+gamma)/2,
///   right solves F_r(r_hat) = (1-gamma)/2,
/// each map nonincreasing in r by stochastic ordering. An endpoint
/// degenerates (to 0 or +infinity) when the corresponding limit of the
/// CDF cannot reach its target: as r -> 0, G_r(r_hat) tends to
/// n_a/(n_a+1) for r_hat <= 1 (and to 1 above); as r -> inf, F_r(r_hat)
/// tends to 1/(n_a+1) for r_hat >= 1 (and to 0 below). Both reduce to the
/// sidedness condition of the Theorem, which is evaluated exactly.
inline OrInterval exact_ci_for_or_hat(const ExtendedOddsRatio& r_hat, int n_a, int n_b,
                                      ConfidenceLevel level) {
  TwoArmCounts{n_a, n_b, 0, 0}.validate();
  const bool two_sided = is_two_sided(n_a, level);
  const ExtendedOddsRatio one = ExtendedOddsRatio::one();
  const double upper0 =
      std::max(2.0 * (n_a - 1) * (n_b - 1), 1.0);  // Appendix-style initial bracket
  const double inf = std::numeric_limits<double>::infinity();

  double left = 0.0;
  if (!r_hat.is_zero() && !(r_hat <= one && !two_sided)) {
    const auto g = [&](double r) { return outcome_distribution(r, n_a, n_b)->cdf_strict(r_hat); };
    left = detail::solve_nonincreasing(g, level.upper_tail_target(), upper0);
    if (std::isinf(left))
      throw numeric_error("exact_ci: lower endpoint bracket exhausted", upper0, inf);
  }

  double right = inf;
  if (!r_hat.is_infinite() && !(r_hat >= one && !two_sided)) {
    const auto f = [&](double r) { return outcome_distribution(r, n_a, n_b)->cdf(r_hat); };
    right = detail::solve_nonincreasing(f, level.lower_tail_target(), upper0);
    if (right == 0.0)
      throw numeric_error("exact_ci: upper endpoint bracket lost below floor",
                          kRootBracketFloor, inf);
  }

  Sidedness sided = Sidedness::two_sided;
  const bool left_deg = left == 0.0;
  const bool right_deg = std::isinf(right);
  if (left_deg && right_deg)
    sided = Sidedness::both_open;
  else if (left_deg)
    sided = Sidedness::left_open_at_zero;
  else if (right_deg)
    sided = Sidedness::right_open_at_infinity;
  return {left, right, sided};
}

/// Confidence interval for the odds ratio from the observed 2x2 table.
inline OrInterval exact_ci(const TwoArmCounts& counts, ConfidenceLevel level) {
  counts.validate();
  return exact_ci_for_or_hat(extended_or(counts), counts.n_a, counts.n_b, level);
}

/// The interval for B-versus-A implied by an A-versus-B interval:
/// (1/right, 1/left) with 1/inf = 0 and 1/0 = inf.
inline OrInterval reciprocal_interval(const OrInterval& iv) {
  const double inf = std::numeric_limits<double>::infinity();
  OrInterval out;
  out.left = std::isinf(iv.right) ? 0.0 : 1.0 / iv.right;
  out.right = iv.left == 0.0 ? inf : 1.0 / iv.left;
  switch (iv.sided) {
    case Sidedness::left_open_at_zero:
      out.sided = Sidedness::right_open_at_infinity;
      break;
    case Sidedness::right_open_at_infinity:
      out.sided = Sidedness::left_open_at_zero;
      break;
    default:
      out.sided = iv.sided;
      break;
  }
  return out;
}

}  // namespace orci
