#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <tuple>
#include <vector>

#include "orci/odds_ratio.hpp"
#include "orci/prob.hpp"

namespace orci {

struct OutcomeEntry {
  TwoArmCounts counts;
  ExtendedOddsRatio or_hat;
  double prob = 0.0;
};

/// Exact distribution of the extended sample odds ratio at a fixed odds
/// ratio r: all (n_a+1)(n_b+1) outcome probabilities, sorted by the value
/// of the estimator (0 first, +infinity last), with prefix sums per
/// distinct support point so CDF queries are binary searches. Support
/// values compare as exact rationals, so mass sitting exactly at a query
/// point lands on the correct side of the strict/non-strict split.
class OutcomeDistribution {
 public:
  OutcomeDistribution(double r, int n_a, int n_b) : r_(r), n_a_(n_a), n_b_(n_b) {
    detail::require_odds_ratio(r);
    TwoArmCounts{n_a, n_b, 0, 0}.validate();
    entries_.reserve(static_cast<std::size_t>(n_a + 1) * (n_b + 1));
    for (int k1 = 0; k1 <= n_a; ++k1) {
      for (int k2 = 0; k2 <= n_b; ++k2) {
        const TwoArmCounts c{n_a, n_b, k1, k2};
        entries_.push_back({c, extended_or(c), outcome_prob(r, c)});
      }
    }
    std::sort(entries_.begin(), entries_.end(), [](const OutcomeEntry& a, const OutcomeEntry& b) {
      if (a.or_hat != b.or_hat) return a.or_hat < b.or_hat;
      return std::tie(a.counts.n_a1, a.counts.n_b1) < std::tie(b.counts.n_a1, b.counts.n_b1);
    });
    for (const OutcomeEntry& e : entries_) {
      if (support_.empty() || support_.back() != e.or_hat) {
        support_.push_back(e.or_hat);
        mass_.push_back(0.0);
      }
      mass_.back() += e.prob;
    }
    cdf_incl_.resize(mass_.size());
    double run = 0.0;
    for (std::size_t i = 0; i < mass_.size(); ++i) {
      run += mass_[i];
      cdf_incl_[i] = run;
    }
  }

  double r() const { return r_; }
  int n_a() const { return n_a_; }
  int n_b() const { return n_b_; }

  /// All outcomes in support order.
  const std::vector<OutcomeEntry>& entries() const { return entries_; }
  /// Distinct estimator values in increasing order.
  std::span<const ExtendedOddsRatio> support() const { return support_; }

  double mass_at_index(std::size_t i) const { return mass_[i]; }
  /// P{OR_hat <= support[i]}.
  double cdf_at_index(std::size_t i) const { return cdf_incl_[i]; }
  /// P{OR_hat < support[i]}.
  double cdf_strict_at_index(std::size_t i) const { return cdf_incl_[i] - mass_[i]; }

  /// P{OR_hat <= t}.
  double cdf(const ExtendedOddsRatio& t) const {
    const auto it = std::upper_bound(support_.begin(), support_.end(), t);
    if (it == support_.begin()) return 0.0;
    return cdf_incl_[static_cast<std::size_t>(it - support_.begin()) - 1];
  }

  /// P{OR_hat < t}.
  double cdf_strict(const ExtendedOddsRatio& t) const {
    const auto it = std::lower_bound(support_.begin(), support_.end(), t);
    if (it == support_.begin()) return 0.0;
    return cdf_incl_[static_cast<std::size_t>(it - support_.begin()) - 1];
  }

  /// Probability mass exactly at t (0 if t is not a support point).
  double mass_at(const ExtendedOddsRatio& t) const {
    const auto it = std::lower_bound(support_.begin(), support_.end(), t);
    if (it == support_.end() || *it != t) return 0.0;
    return mass_[static_cast<std::size_t>(it - support_.begin())];
  }

  /// Sum of all outcome probabilities (1 up to quadrature error).
  double total() const { return cdf_incl_.empty() ? 0.0 : cdf_incl_.back(); }

 private:
  double r_;
  int n_a_;
  int n_b_;
  std::vector<OutcomeEntry> entries_;
  std::vector<ExtendedOddsRatio> support_;
  std::vector<double> mass_;
  std::vector<double> cdf_incl_;
};

/// Shared distribution cache. Keyed by (n_a, n_b, exact bits of r); the CI
/// solver asks for many r values, while coverage sweeps reuse one r across
/// every support point. Bounded FIFO eviction keeps memory flat; returned
/// pointers stay valid after eviction.
inline std::shared_ptr<const OutcomeDistribution> outcome_distribution(double r, int n_a,
                                                                       int n_b) {
  using Key = std::tuple<int, int, std::uint64_t>;
  static std::mutex mu;
  static std::map<Key, std::shared_ptr<const OutcomeDistribution>> cache;
  static std::deque<Key> order;
  constexpr std::size_t kCapacity = 256;

  const Key key{n_a, n_b, std::bit_cast<std::uint64_t>(r)};
  {
    std::lock_guard lock(mu);
    if (const auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto dist = std::make_shared<const OutcomeDistribution>(r, n_a, n_b);
  std::lock_guard lock(mu);
  const auto [it, inserted] = cache.emplace(key, dist);
  if (!inserted) return it->second;
  order.push_back(key);
  while (order.size() > kCapacity) {
    cache.erase(order.front());
    order.pop_front();
  }
  return dist;
}

/// F_r(t) = P_r{OR_hat <= t}.
inline double cdf_F(double r, const ExtendedOddsRatio& t, int n_a, int n_b) {
  return outcome_distribution(r, n_a, n_b)->cdf(t);
}

/// G_r(t) = P_r{OR_hat < t}.
inline double cdf_G(double r, const ExtendedOddsRatio& t, int n_a, int n_b) {
  return outcome_distribution(r, n_a, n_b)->cdf_strict(t);
}

/// Mass of the atom at 0: P_r{OR_hat = 0}.
inline double prob_or_zero(double r, int n_a, int n_b) {
  return outcome_distribution(r, n_a, n_b)->mass_at(ExtendedOddsRatio::zero());
}

/// Mass of the atom at 1: P_r{OR_hat = 1}.
inline double prob_or_one(double r, int n_a, int n_b) {
  return outcome_distribution(r, n_a, n_b)->mass_at(ExtendedOddsRatio::one());
}

}  // namespace orci
