#pragma once

#include <vector>

namespace sbm {

// Community-size profile of the least-favorable space.
//
// For K >= 3 the K communities split into K1 of size `base`, K2 of size
// base + 1 and K3 of size base - 1, with base = floor(n/K) when
// `ceiling_base` is false and ceil(n/K) otherwise. Among the candidate
// decompositions of the remainder r = n - floor(n/K) K, the one with the
// largest margin min(K1, K2, K - max(K1, K2)) is chosen (earlier candidates
// win ties), so both K1 and K2 stay a constant fraction of K:
//   floor base:   (K - r, r, 0)
//   floor base:   (K - 2 floor(K/3) - r, floor(K/3) + r, floor(K/3))
//   ceiling base: (K - 2 floor(K/3) - s, floor(K/3), floor(K/3) + s),
//                 s = ceil(n/K) K - n.
//
// For K = 2 the profile is (floor(n/2), ceil(n/2)) for odd n and the pair
// {(n/2, n/2), (n/2 + 1, n/2 - 1)} for even n; k1/k2/k3 are left at zero.
struct LeastFavorable {
  int n = 0;
  int k = 0;
  int k1 = 0;
  int k2 = 0;
  int k3 = 0;
  int base = 0;
  bool ceiling_base = false;
  // Achieved min(K1, K2, K - max(K1, K2)) / K; zero for K = 2.
  double margin = 0.0;
  // Admissible size vectors, each sorted in the order K1 block, K2 block,
  // K3 block (K >= 3) or as listed above (K = 2).
  std::vector<std::vector<int>> profiles;
};

// Requires k >= 2 and n >= k. Throws std::invalid_argument otherwise.
LeastFavorable construct_least_favorable(int n, int k);

}  // namespace sbm
