// O(K^3) Hungarian method with row/column potentials (shortest augmenting
// path formulation). Solves the minimization on negated weights.

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "sbm/loss.hpp"

namespace sbm::detail {

std::vector<int> max_weight_assignment(const std::vector<std::int64_t>& weight, int size) {
  if (size < 0 || weight.size() != static_cast<std::size_t>(size) * size) {
    throw std::invalid_argument("max_weight_assignment: weight matrix is not size x size");
  }
  const std::int64_t inf = std::numeric_limits<std::int64_t>::max() / 4;
  auto cost = [&](int i, int j) { return -weight[static_cast<std::size_t>(i - 1) * size + (j - 1)]; };

  // 1-based arrays; column 0 is the virtual start.
  std::vector<std::int64_t> u(size + 1, 0), v(size + 1, 0);
  std::vector<int> match(size + 1, 0), way(size + 1, 0);
  for (int i = 1; i <= size; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<std::int64_t> minv(size + 1, inf);
    std::vector<bool> used(size + 1, false);
    do {
      used[j0] = true;
      const int i0 = match[j0];
      std::int64_t delta = inf;
      int j1 = 0;
      for (int j = 1; j <= size; ++j) {
        if (used[j]) continue;
        const std::int64_t cur = cost(i0, j) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= size; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<int> assignment(size, -1);
  for (int j = 1; j <= size; ++j) {
    if (match[j] != 0) assignment[match[j] - 1] = j - 1;
  }
  return assignment;
}

}  // namespace sbm::detail
