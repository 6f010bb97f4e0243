#pragma once

#include <stdexcept>
#include <string>

namespace orci {

/// Invalid inputs: counts out of range, confidence level outside (0,1), etc.
class domain_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed to converge. Carries the best estimate
/// available and a bound on its error.
class numeric_error : public std::runtime_error {
 public:
  numeric_error(const std::string& what, double best_estimate, double error_bound)
      : std::runtime_error(what), best_estimate_(best_estimate), error_bound_(error_bound) {}

  double best_estimate() const { return best_estimate_; }
  double error_bound() const { return error_bound_; }

 private:
  double best_estimate_;
  double error_bound_;
};

/// The asymptotic interval does not exist (a cell of the 2x2 table is zero).
class undefined_interval_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace orci
