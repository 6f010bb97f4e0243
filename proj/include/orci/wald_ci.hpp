#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "orci/errors.hpp"
#include "orci/types.hpp"

namespace orci {

/// Inverse standard normal CDF. Acklam's rational approximation followed by
/// one Halley step against erfc; absolute error well below 1e-9.
inline double normal_quantile(double delta) {
  if (!(delta > 0.0 && delta < 1.0))
    throw domain_error("normal_quantile: delta must lie strictly between 0 and 1");

  static constexpr double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                  -2.759285104469687e+02, 1.383577518672690e+02,
                                  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                  -1.556989798598866e+02, 6.680131188771972e+01,
                                  -1.328068155288572e+01};
  static constexpr double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                  -2.400758277161838e+00, -2.549732539343734e+00,
                                  4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                  2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  double x;
  if (delta < p_low) {
    const double q = std::sqrt(-2.0 * std::log(delta));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (delta <= 1.0 - p_low) {
    const double q = delta - 0.5;
    const double s = q * q;
    x = (((((a[0] * s + a[1]) * s + a[2]) * s + a[3]) * s + a[4]) * s + a[5]) * q /
        (((((b[0] * s + b[1]) * s + b[2]) * s + b[3]) * s + b[4]) * s + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-delta));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }

  const double e = 0.5 * std::erfc(-x / std::numbers::sqrt2) - delta;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

/// The standard asymptotic interval:
/// OR_hat * exp(u_{(1-+gamma)/2} sqrt(1/n_a1 + 1/n_a0 + 1/n_b1 + 1/n_b0)).
/// Does not exist when any cell of the table is zero.
inline OrInterval standard_ci(const TwoArmCounts& c, ConfidenceLevel level) {
  c.validate();
  const auto cell = [&]() -> const char* {
    if (c.n_a1 == 0) return "n_a1";
    if (c.n_a0() == 0) return "n_a0";
    if (c.n_b1 == 0) return "n_b1";
    if (c.n_b0() == 0) return "n_b0";
    return nullptr;
  }();
  if (cell)
    throw undefined_interval_error(std::string("standard interval does not exist: cell ") +
                                   cell + " is zero");

  const double log_or = std::log(static_cast<double>(c.n_a1)) -
                        std::log(static_cast<double>(c.n_a0())) +
                        std::log(static_cast<double>(c.n_b0())) -
                        std::log(static_cast<double>(c.n_b1));
  const double se = std::sqrt(1.0 / c.n_a1 + 1.0 / c.n_a0() + 1.0 / c.n_b1 + 1.0 / c.n_b0());
  const double u = normal_quantile(level.upper_tail_target());
  return {std::exp(log_or - u * se), std::exp(log_or + u * se), Sidedness::two_sided};
}

}  // namespace orci
