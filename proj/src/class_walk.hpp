#pragma once

// Internal: depth-first walk over restricted growth strings (0-based labels,
// a[0] = 0, a[i] <= max(a[0..i-1]) + 1) using exactly k blocks whose sizes
// are admitted by a SizeConstraint. Leaves arrive in lexicographic order.

#include <algorithm>
#include <vector>

#include "sbm/core.hpp"

namespace sbm::detail {

// Visitor interface:
//   void place(int node, int block, int size_before);
//   void unplace(int node, int block);
//   void leaf(const std::vector<int>& labels, int first_changed);
template <typename Visitor>
class ClassWalk {
 public:
  ClassWalk(const SizeConstraint& rule, Visitor& visitor)
      : rule_(rule), visitor_(visitor), n_(rule.n()), k_(rule.k()),
        lo_(rule.min_size()), hi_(rule.max_size()), labels_(n_, 0), counts_(k_, 0) {}

  void run() {
    if (n_ < k_ || k_ < 1 || !rule_.feasible()) return;
    dirty_ = 0;
    descend(0, 0);
  }

 private:
  // Whether the remaining nodes can still complete the sizes.
  bool completable(int remaining, int used) const {
    long long need = static_cast<long long>(k_ - used) * lo_;
    long long room = static_cast<long long>(k_ - used) * hi_;
    for (int c = 0; c < used; ++c) {
      need += std::max(0, lo_ - counts_[c]);
      room += hi_ - counts_[c];
    }
    return need <= remaining && room >= remaining;
  }

  void descend(int i, int used) {
    if (i == n_) {
      if (used == k_ && rule_.admits(counts_)) {
        visitor_.leaf(labels_, dirty_);
        dirty_ = n_;
      }
      return;
    }
    const int top = std::min(used + 1, k_);
    for (int c = 0; c < top; ++c) {
      if (counts_[c] >= hi_) continue;
      const int next_used = c == used ? used + 1 : used;
      labels_[i] = c;
      dirty_ = std::min(dirty_, i);
      visitor_.place(i, c, counts_[c]);
      ++counts_[c];
      if (completable(n_ - i - 1, next_used)) descend(i + 1, next_used);
      --counts_[c];
      visitor_.unplace(i, c);
    }
  }

  const SizeConstraint& rule_;
  Visitor& visitor_;
  int n_, k_, lo_, hi_;
  std::vector<int> labels_;
  std::vector<int> counts_;
  int dirty_ = 0;
};

}  // namespace sbm::detail
