#include "sbm/least_favorable.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace sbm {
namespace {

struct Candidate {
  int k1, k2, k3, base;
  bool ceiling;
};

bool valid(const Candidate& c, int k) {
  if (c.k1 < 1 || c.k2 < 1 || c.k3 < 0) return false;
  if (c.k1 + c.k2 + c.k3 != k) return false;
  // Every community must be nonempty.
  return c.k3 == 0 || c.base - 1 >= 1;
}

int margin_of(const Candidate& c, int k) {
  return std::min({c.k1, c.k2, k - std::max(c.k1, c.k2)});
}

std::vector<int> sizes_of(const Candidate& c) {
  std::vector<int> sizes;
  sizes.insert(sizes.end(), c.k1, c.base);
  sizes.insert(sizes.end(), c.k2, c.base + 1);
  sizes.insert(sizes.end(), c.k3, c.base - 1);
  return sizes;
}

}  // namespace

LeastFavorable construct_least_favorable(int n, int k) {
  if (k < 2 || n < k) {
    throw std::invalid_argument("construct_least_favorable: need k >= 2 and n >= k, got n=" +
                                std::to_string(n) + " k=" + std::to_string(k));
  }
  LeastFavorable out;
  out.n = n;
  out.k = k;
  const int fl = n / k;
  const int r = n - fl * k;

  if (k == 2) {
    out.base = fl;
    if (r == 1) {
      out.profiles = {{fl, fl + 1}};
    } else if (fl >= 2) {
      out.profiles = {{fl, fl}, {fl + 1, fl - 1}};
    } else {
      out.profiles = {{fl, fl}};
    }
    return out;
  }

  const int third = k / 3;
  const int ce = r == 0 ? fl : fl + 1;
  const int s = ce * k - n;
  const Candidate candidates[] = {
      {k - r, r, 0, fl, false},
      {k - 2 * third - r, third + r, third, fl, false},
      {k - 2 * third - s, third, third + s, ce, true},
  };

  const Candidate* best = nullptr;
  int best_margin = -1;
  for (const Candidate& c : candidates) {
    if (!valid(c, k)) continue;
    const int m = margin_of(c, k);
    if (m > best_margin) {
      best = &c;
      best_margin = m;
    }
  }

  // Only n == k (all singletons) and similar corner cases land here: a
  // single size class.
  const Candidate fallback{k - r, r, 0, fl, false};
  if (best == nullptr) {
    best = &fallback;
    best_margin = 0;
  }

  out.k1 = best->k1;
  out.k2 = best->k2;
  out.k3 = best->k3;
  out.base = best->base;
  out.ceiling_base = best->ceiling;
  out.margin = static_cast<double>(std::max(best_margin, 0)) / k;
  out.profiles = {sizes_of(*best)};
  return out;
}

}  // namespace sbm
