#pragma once

#include <limits>
#include <string>

#include "orci/errors.hpp"

namespace orci {

/// Margins and success counts of a two-arm binomial experiment
/// (the 2x2 table: n_a1 successes out of n_a in group A, n_b1 out of n_b in B).
struct TwoArmCounts {
  int n_a = 1;
  int n_b = 1;
  int n_a1 = 0;
  int n_b1 = 0;

  constexpr int n_a0() const { return n_a - n_a1; }
  constexpr int n_b0() const { return n_b - n_b1; }
  constexpr int total() const { return n_a + n_b; }
  constexpr int successes() const { return n_a1 + n_b1; }

  /// The same experiment with the roles of A and B exchanged.
  constexpr TwoArmCounts swapped() const { return {n_b, n_a, n_b1, n_a1}; }

  void validate() const {
    if (n_a < 1 || n_b < 1)
      throw domain_error("group sizes must be positive: n_a=" + std::to_string(n_a) +
                         ", n_b=" + std::to_string(n_b));
    if (n_a1 < 0 || n_a1 > n_a)
      throw domain_error("success count n_a1=" + std::to_string(n_a1) +
                         " outside [0, " + std::to_string(n_a) + "]");
    if (n_b1 < 0 || n_b1 > n_b)
      throw domain_error("success count n_b1=" + std::to_string(n_b1) +
                         " outside [0, " + std::to_string(n_b) + "]");
  }

  friend constexpr bool operator==(const TwoArmCounts&, const TwoArmCounts&) = default;
};

/// Confidence level gamma in (0,1).
class ConfidenceLevel {
 public:
  explicit ConfidenceLevel(double gamma) : gamma_(gamma) {
    if (!(gamma > 0.0 && gamma < 1.0))
      throw domain_error("confidence level must lie strictly between 0 and 1");
  }

  double gamma() const { return gamma_; }

  /// (1+gamma)/2 -- the target for the lower-endpoint equation.
  double upper_tail_target() const { return 0.5 * (1.0 + gamma_); }
  /// (1-gamma)/2 -- the target for the upper-endpoint equation.
  double lower_tail_target() const { return 0.5 * (1.0 - gamma_); }

 private:
  double gamma_;
};

enum class Sidedness {
  two_sided,               // 0 < left < right < inf
  left_open_at_zero,       // (0, right)
  right_open_at_infinity,  // (left, inf)
  both_open,               // (0, inf) -- carries no information
};

/// Open interval for the odds ratio; right may be +infinity.
struct OrInterval {
  double left = 0.0;
  double right = std::numeric_limits<double>::infinity();
  Sidedness sided = Sidedness::both_open;
};

}  // namespace orci
