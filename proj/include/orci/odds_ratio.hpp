#pragma once

#include <compare>
#include <limits>
#include <numeric>

#include "orci/errors.hpp"
#include "orci/types.hpp"

namespace orci {

/// Sample odds ratio extended to the boundary of the table: an exact
/// nonnegative rational, 0, or +infinity. Exact representation keeps
/// tie detection between support points bit-exact, which the strict and
/// non-strict CDFs depend on.
class ExtendedOddsRatio {
 public:
  /// Defaults to 1 (the value of the two degenerate corners).
  constexpr ExtendedOddsRatio() = default;

  static constexpr ExtendedOddsRatio zero() { return {0, 1}; }
  static constexpr ExtendedOddsRatio one() { return {1, 1}; }
  static constexpr ExtendedOddsRatio infinity() { return {1, 0}; }

  /// num/den with num >= 0, den >= 0, not both zero; den == 0 means +infinity.
  static constexpr ExtendedOddsRatio rational(long long num, long long den) {
    if (num < 0 || den < 0 || (num == 0 && den == 0))
      throw domain_error("extended odds ratio: invalid rational");
    if (num == 0) return zero();
    if (den == 0) return infinity();
    const long long g = std::gcd(num, den);
    return {num / g, den / g};
  }

  constexpr bool is_zero() const { return num_ == 0; }
  constexpr bool is_infinite() const { return den_ == 0; }
  constexpr bool is_one() const { return num_ == 1 && den_ == 1; }
  constexpr bool is_finite() const { return den_ != 0; }

  constexpr long long num() const { return num_; }
  constexpr long long den() const { return den_; }

  double value() const {
    if (is_infinite()) return std::numeric_limits<double>::infinity();
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  constexpr ExtendedOddsRatio reciprocal() const {
    if (is_zero()) return infinity();
    if (is_infinite()) return zero();
    return {den_, num_};
  }

  friend constexpr bool operator==(const ExtendedOddsRatio& a, const ExtendedOddsRatio& b) {
    return cross(a, b) == cross(b, a);
  }

  friend constexpr std::strong_ordering operator<=>(const ExtendedOddsRatio& a,
                                                    const ExtendedOddsRatio& b) {
    return cross(a, b) <=> cross(b, a);
  }

 private:
  constexpr ExtendedOddsRatio(long long num, long long den) : num_(num), den_(den) {}

  // a/b vs c/d compares as a*d vs c*b; with num,den >= 0 this also orders
  // 0 = 0/1 and inf = 1/0 correctly against everything.
  static constexpr __int128 cross(const ExtendedOddsRatio& x, const ExtendedOddsRatio& y) {
    return static_cast<__int128>(x.num_) * y.den_;
  }

  long long num_ = 1;
  long long den_ = 1;
};

/// The sample odds ratio with the boundary extension:
///   0    when no successes in A (with some in B) or B all successes,
///   inf  when A all successes (with some in B) or no successes in B,
///   1    at the two corners (no successes at all / everything a success),
///   n_a1*(n_b - n_b1) / ((n_a - n_a1)*n_b1) elsewhere.
/// The corners take precedence; (n_a1 = n_a, n_b1 = 0), which the finite
/// formula leaves 0/0, maps to +infinity.
inline ExtendedOddsRatio extended_or(const TwoArmCounts& c) {
  c.validate();
  const bool a_none = c.n_a1 == 0;
  const bool a_all = c.n_a1 == c.n_a;
  const bool b_none = c.n_b1 == 0;
  const bool b_all = c.n_b1 == c.n_b;
  if ((a_none && b_none) || (a_all && b_all)) return ExtendedOddsRatio::one();
  if (a_none || b_all) return ExtendedOddsRatio::zero();
  if (a_all || b_none) return ExtendedOddsRatio::infinity();
  return ExtendedOddsRatio::rational(static_cast<long long>(c.n_a1) * c.n_b0(),
                                     static_cast<long long>(c.n_a0()) * c.n_b1);
}

}  // namespace orci
