#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "orci/errors.hpp"
#include "orci/quadrature.hpp"
#include "orci/types.hpp"

namespace orci {

namespace detail {

inline double log_choose(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

inline void require_odds_ratio(double r) {
  if (!(r > 0.0) || !std::isfinite(r))
    throw domain_error("odds ratio parameter must lie in (0, inf)");
}

inline void require_proportion(double p_a) {
  if (!(p_a > 0.0 && p_a < 1.0))
    throw domain_error("nuisance proportion p_a must lie in (0, 1)");
}

}  // namespace detail

inline constexpr double kOutcomeProbAbsTol = 1e-10;
inline constexpr double kHypergeomRelTol = 1e-10;
inline constexpr int kQuadratureMaxSegments = 1'000'000;

/// C(n,k) p^k (1-p)^(n-k), evaluated in log space; 0^0 = 1, so the
/// boundary cases p = 0 and p = 1 are well defined. Stable for n up to 1e4.
inline double binomial_pmf(int k, int n, double p) {
  if (n < 1) throw domain_error("binomial_pmf: n must be positive");
  if (k < 0 || k > n)
    throw domain_error("binomial_pmf: k=" + std::to_string(k) + " outside [0, " +
                       std::to_string(n) + "]");
  if (!(p >= 0.0 && p <= 1.0)) throw domain_error("binomial_pmf: p outside [0, 1]");
  if (p == 0.0) return k == 0 ? 1.0 : 0.0;
  if (p == 1.0) return k == n ? 1.0 : 0.0;
  const double lf =
      detail::log_choose(n, k) + k * std::log(p) + (n - k) * std::log1p(-p);
  return std::exp(lf);
}

/// Success probability in group B implied by odds ratio r and p_A.
inline double group_b_proportion(double r, double p_a) {
  return p_a / (p_a + r * (1.0 - p_a));
}

/// Joint probability of observing (n_a1, n_b1) at fixed r and p_A:
/// Bin(n_a1; n_a, p_a) * Bin(n_b1; n_b, p_B(p_a, r)).
inline double joint_prob_at_pa(double r, double p_a, const TwoArmCounts& c) {
  detail::require_odds_ratio(r);
  detail::require_proportion(p_a);
  c.validate();
  return binomial_pmf(c.n_a1, c.n_a, p_a) *
         binomial_pmf(c.n_b1, c.n_b, group_b_proportion(r, p_a));
}

namespace detail {

// Initial split points for the p_A integral. The B-side pmf varies on the
// scale of the transition point s = r/(1+r) where p_B = 1/2: for extreme r
// the whole of its variation sits in a layer near 0 or 1 that is far
// narrower than the unit interval, so both ends get a geometric ladder at
// that scale. The interior peaks of the two pmf factors are added as
// explicit edges too.
inline std::vector<double> pa_integration_edges(double r, const TwoArmCounts& c) {
  std::vector<double> edges{0.0, 1.0};
  const double s = r / (1.0 + r);
  // factor-4 ladders through s (from below) and through 1-s (from above);
  // peaks have width >= s/sqrt(n_b)-ish, so rungs this dense keep every
  // peak wide relative to the segment that holds it
  for (double x = s / 4096.0; x < 0.5; x *= 4.0)
    if (x > 1e-15) edges.push_back(x);
  for (double y = (1.0 - s) / 4096.0; y < 0.5; y *= 4.0)
    if (y > 1e-15) edges.push_back(1.0 - y);
  if (c.n_a1 > 0 && c.n_a1 < c.n_a)
    edges.push_back(static_cast<double>(c.n_a1) / c.n_a);
  if (c.n_b1 > 0 && c.n_b1 < c.n_b) {
    // p_A at which p_B sits on the B-side mode k2/n_b
    const double q = static_cast<double>(c.n_b1) / c.n_b;
    const double p_star = q * r / ((1.0 - q) + q * r);
    if (p_star > 0.0 && p_star < 1.0) edges.push_back(p_star);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

}  // namespace detail

/// Probability of the outcome (n_a1, n_b1) under odds ratio r, with the
/// nuisance proportion integrated out uniformly over (0,1). Adaptive
/// quadrature of the joint pmf, absolute tolerance 1e-10.
inline double outcome_prob(double r, const TwoArmCounts& c) {
  detail::require_odds_ratio(r);
  c.validate();
  const int k1 = c.n_a1, k2 = c.n_b1, na = c.n_a, nb = c.n_b;
  const double log_coeff = detail::log_choose(na, k1) + detail::log_choose(nb, k2);
  const double log_r = std::log(r);
  const auto integrand = [=](double p) {
    const double lp = std::log(p);
    const double l1p = std::log1p(-p);
    const double d = std::log(p + r * (1.0 - p));
    double lf = log_coeff;
    if (k1 > 0) lf += k1 * lp;
    if (k1 < na) lf += (na - k1) * l1p;
    if (k2 > 0) lf += k2 * (lp - d);           // log p_B
    if (k2 < nb) lf += (nb - k2) * (log_r + l1p - d);  // log (1 - p_B)
    return std::exp(lf);
  };
  const std::vector<double> edges = detail::pa_integration_edges(r, c);
  const QuadratureResult res =
      integrate_adaptive_edges(integrand, edges, kOutcomeProbAbsTol, 0.0,
                               kQuadratureMaxSegments);
  if (!res.converged)
    throw numeric_error("outcome_prob: quadrature did not converge for r=" +
                            std::to_string(r),
                        res.value, res.error_bound);
  return std::clamp(res.value, 0.0, 1.0);
}

namespace detail {

// Exponent of the Euler integrand: (y-1) ln u + (z-y-1) ln(1-u) - x ln(1-ut).
struct EulerExponent {
  double x, y, z, t;

  double operator()(double u) const {
    double s = 0.0;
    if (y != 1.0) s += (y - 1.0) * std::log(u);
    if (z - y != 1.0) s += (z - y - 1.0) * std::log1p(-u);
    if (x != 0.0) s -= x * std::log1p(-u * t);
    return s;
  }

  // Largest finite value of the exponent over (0,1). Stationary points of
  // the exponent are roots of a quadratic in u.
  double peak() const {
    double best = -std::numeric_limits<double>::infinity();
    const auto consider = [&](double u) {
      if (u > 0.0 && u < 1.0) best = std::max(best, (*this)(u));
    };
    const double a = y - 1.0, b = z - y - 1.0, ct = x * t;
    const double qa = t * (a + b) - ct;
    const double qb = ct - a * (1.0 + t) - b;
    const double qc = a;
    if (qa != 0.0) {
      const double disc = qb * qb - 4.0 * qa * qc;
      if (disc >= 0.0) {
        const double sq = std::sqrt(disc);
        consider((-qb + sq) / (2.0 * qa));
        consider((-qb - sq) / (2.0 * qa));
      }
    } else if (qb != 0.0) {
      consider(-qc / qb);
    }
    for (double u : {1e-12, 1e-6, 1e-3, 0.1, 0.5, 0.9, 1.0 - 1e-3, 1.0 - 1e-6, 1.0 - 1e-12})
      consider(u);
    return best;
  }
};

}  // namespace detail

/// Log of the regularized Gauss hypergeometric function in Euler-integral
/// form: (1/(Gamma(z-y)Gamma(y))) Int_0^1 u^(y-1) (1-u)^(z-y-1) (1-ut)^(-x) du,
/// valid for z > y > 0 and t < 1. Integration runs on the exponent shifted
/// by its peak so the linear-space quadrature neither overflows nor
/// underflows for large parameters.
inline double log_gauss_2f1_regularized(double x, double y, double z, double t) {
  if (!(z > y && y > 0.0))
    throw domain_error("gauss_2f1_regularized: requires z > y > 0");
  if (!(t < 1.0)) throw domain_error("gauss_2f1_regularized: requires t < 1");
  const detail::EulerExponent g{x, y, z, t};
  const double shift = g.peak();
  const auto integrand = [&](double u) { return std::exp(std::min(g(u) - shift, 700.0)); };
  std::vector<double> edges{0.0, 1.0};
  if (t > 0.0) {
    // (1-ut)^(-x) varies on the scale 1-t near u = 1
    double layer = 1.0 - t;
    for (int k = 0; k <= 7 && layer < 1.0; ++k, layer /= 8.0)
      if (layer > 1e-16) edges.push_back(1.0 - layer);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  }
  const QuadratureResult res =
      integrate_adaptive_edges(integrand, edges, 0.0, kHypergeomRelTol,
                               kQuadratureMaxSegments);
  if (!res.converged || !(res.value > 0.0))
    throw numeric_error("gauss_2f1_regularized: quadrature did not converge",
                        res.value, res.error_bound);
  return -std::lgamma(z - y) - std::lgamma(y) + shift + std::log(res.value);
}

inline double gauss_2f1_regularized(double x, double y, double z, double t) {
  return std::exp(log_gauss_2f1_regularized(x, y, z, t));
}

/// Closed form of outcome_prob via the regularized hypergeometric function:
/// n! C(n_a,n_a1)C(n_b,n_b1)/C(n,n_1) (1/r)^(n_b1) 2F1r[n_b, n_1+1; n+2; 1-1/r].
/// Verification mirror of the quadrature path; the two agree to 1e-8 on
/// moderate r. Numeric failures here are reported, and callers fall back to
/// outcome_prob.
inline double outcome_prob_hypergeom(double r, const TwoArmCounts& c) {
  detail::require_odds_ratio(r);
  c.validate();
  const int n = c.total(), n1 = c.successes();
  const double t = 1.0 - 1.0 / r;
  const double logp = std::lgamma(n + 1.0) + detail::log_choose(c.n_a, c.n_a1) +
                      detail::log_choose(c.n_b, c.n_b1) - detail::log_choose(n, n1) -
                      c.n_b1 * std::log(r) +
                      log_gauss_2f1_regularized(c.n_b, n1 + 1.0, n + 2.0, t);
  return std::clamp(std::exp(logp), 0.0, 1.0);
}

}  // namespace orci
