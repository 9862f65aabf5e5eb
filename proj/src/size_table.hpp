#pragma once

// Internal: counting of labelled assignments admitted by a SizeConstraint.

#include <cmath>
#include <limits>
#include <vector>

#include "sbm/core.hpp"

namespace sbm::detail {

inline double log_choose(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

inline double log_add(double x, double y) {
  if (x == -std::numeric_limits<double>::infinity()) return y;
  if (y == -std::numeric_limits<double>::infinity()) return x;
  const double m = x > y ? x : y;
  return m + std::log1p(std::exp(-std::abs(x - y)));
}

// For interval constraints: log_ways(j, r) is the log of the number of ways
// to assign r labelled nodes to communities j..k-1 (0-based) with every size
// in [lo, hi].
class IntervalTable {
 public:
  explicit IntervalTable(const SizeConstraint& rule)
      : k_(rule.k()), n_(rule.n()), lo_(rule.min_size()), hi_(rule.max_size()),
        table_(static_cast<std::size_t>(k_ + 1) * (n_ + 1),
               -std::numeric_limits<double>::infinity()) {
    at(k_, 0) = 0.0;
    for (int j = k_ - 1; j >= 0; --j) {
      for (int r = 0; r <= n_; ++r) {
        double acc = -std::numeric_limits<double>::infinity();
        for (int s = lo_; s <= hi_ && s <= r; ++s) {
          const double rest = at(j + 1, r - s);
          if (rest == -std::numeric_limits<double>::infinity()) continue;
          acc = log_add(acc, log_choose(r, s) + rest);
        }
        at(j, r) = acc;
      }
    }
  }

  double log_ways(int j, int r) const { return table_[idx(j, r)]; }
  int lo() const { return lo_; }
  int hi() const { return hi_; }

 private:
  std::size_t idx(int j, int r) const {
    return static_cast<std::size_t>(j) * (n_ + 1) + r;
  }
  double& at(int j, int r) { return table_[idx(j, r)]; }

  int k_, n_, lo_, hi_;
  std::vector<double> table_;
};

inline double log_multinomial(int n, const std::vector<int>& sizes) {
  double v = std::lgamma(n + 1.0);
  for (int s : sizes) v -= std::lgamma(s + 1.0);
  return v;
}

// Log of the number of distinct orderings of a multiset of sizes.
inline double log_arrangements(const std::vector<int>& sorted_sizes) {
  double v = std::lgamma(static_cast<double>(sorted_sizes.size()) + 1.0);
  std::size_t i = 0;
  while (i < sorted_sizes.size()) {
    std::size_t j = i;
    while (j < sorted_sizes.size() && sorted_sizes[j] == sorted_sizes[i]) ++j;
    v -= std::lgamma(static_cast<double>(j - i) + 1.0);
    i = j;
  }
  return v;
}

// Log of the number of labelled assignments (labels 1..k, all communities
// nonempty) admitted by `rule`; -inf when none.
inline double log_labelled_count(const SizeConstraint& rule) {
  if (!rule.feasible()) return -std::numeric_limits<double>::infinity();
  if (rule.is_interval()) return IntervalTable(rule).log_ways(0, rule.n());
  double acc = -std::numeric_limits<double>::infinity();
  for (const auto& p : rule.allowed_profiles()) {
    acc = log_add(acc, log_multinomial(rule.n(), p) + log_arrangements(p));
  }
  return acc;
}

}  // namespace sbm::detail
