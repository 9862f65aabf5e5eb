#include <algorithm>
#include <numeric>
#include <set>

#include "doctest.h"
#include "sbm/loss.hpp"
#include "sbm/rng.hpp"

using namespace sbm;

namespace {

Assignment A(std::vector<Label> labels, int k) {
  return Assignment(std::move(labels), k);
}

Assignment random_assignment(Rng& rng, int n, int k) {
  std::vector<Label> labels(n);
  for (auto& c : labels) c = 1 + static_cast<int>(rng.below(k));
  return Assignment(labels, k);
}

std::vector<std::vector<Label>> all_relabelings(int k) {
  std::vector<Label> p(k);
  std::iota(p.begin(), p.end(), 1);
  std::vector<std::vector<Label>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

int brute_distance(const Assignment& x, const Assignment& y) {
  int best = x.n();
  for (const auto& d : all_relabelings(x.k())) best = std::min(best, hamming(x, y.relabeled(d)));
  return best;
}

// Local losses straight from the definition: collect the distinct
// minimizing relabeled estimates and average the indicator.
std::vector<Rational> brute_local(const Assignment& sigma, const Assignment& sigma_hat) {
  const int best = brute_distance(sigma, sigma_hat);
  std::set<Assignment> minimizers;
  for (const auto& d : all_relabelings(sigma.k())) {
    Assignment cand = sigma_hat.relabeled(d);
    if (hamming(sigma, cand) == best) minimizers.insert(cand);
  }
  std::vector<Rational> out;
  for (int i = 0; i < sigma.n(); ++i) {
    std::int64_t wrong = 0;
    for (const auto& m : minimizers) wrong += m[i] != sigma[i];
    out.emplace_back(wrong, static_cast<std::int64_t>(minimizers.size()));
  }
  return out;
}

}  // namespace

TEST_CASE("hamming examples") {
  CHECK(hamming(A({1, 1, 2, 2}, 2), A({1, 1, 2, 2}, 2)) == 0);
  CHECK(hamming(A({1, 1, 2, 2}, 2), A({2, 2, 1, 1}, 2)) == 4);
  CHECK(hamming(A({1, 2}, 2), A({1, 1}, 2)) == 1);
  CHECK_THROWS_AS(hamming(A({1, 2}, 2), A({1, 1, 1}, 2)), std::invalid_argument);
}

TEST_CASE("class distance examples") {
  CHECK(class_distance(A({1, 1, 2, 2}, 2), A({2, 2, 1, 1}, 2)).distance == 0);
  CHECK(class_distance(A({1, 1, 2, 2}, 2), A({1, 2, 2, 2}, 2)).distance == 1);
  const Assignment s = A({3, 1, 2, 2, 3}, 3);
  CHECK(class_distance(s, s).distance == 0);
  const auto cd = class_distance(A({1, 1, 2, 2}, 2), A({2, 2, 1, 1}, 2));
  CHECK(cd.relabel == std::vector<Label>{2, 1});
  CHECK_THROWS_AS(class_distance(A({1, 2}, 2), A({1, 2}, 3)), std::invalid_argument);
}

TEST_CASE("mismatch ratio examples") {
  CHECK(mismatch_ratio(A({1, 1, 2, 2}, 2), A({2, 2, 1, 1}, 2)) == Rational(0));
  CHECK(mismatch_ratio(A({1, 1, 2, 2}, 2), A({1, 2, 2, 2}, 2)) == Rational(1, 4));
  CHECK(to_double(Rational(1, 4)) == 0.25);
}

TEST_CASE("local loss examples") {
  CHECK(local_loss(A({1, 2}, 2), A({1, 1}, 2), 0) == Rational(1, 2));
  CHECK(local_loss(A({1, 2}, 2), A({1, 1}, 2), 1) == Rational(1, 2));
  const auto ll = local_losses(A({1, 1, 2, 2}, 2), A({1, 2, 2, 2}, 2));
  CHECK(ll == std::vector<Rational>{0, 1, 0, 0});
  const Assignment s = A({2, 1, 3, 3}, 3);
  for (int i = 0; i < 4; ++i) CHECK(local_loss(s, s, i) == Rational(0));
  CHECK_THROWS_AS(local_loss(s, s, 4), std::out_of_range);
  std::vector<Label> big(9);
  std::iota(big.begin(), big.end(), 1);
  CHECK_THROWS_AS(local_loss(A(big, 9), A(big, 9), 0), std::length_error);
}

TEST_CASE("alpha and gamma examples") {
  const auto ag = alpha_gamma(A({1, 2, 2, 2}, 2), A({1, 1, 2, 2}, 2));
  CHECK(ag.alpha == 1);
  CHECK(ag.gamma == 2);
  CHECK(alpha_gamma(A({1, 1, 2}, 2), A({1, 1, 2}, 2)) == AlphaGamma{0, 0});
  Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    const Assignment x = random_assignment(rng, 9, 3);
    const Assignment y = random_assignment(rng, 9, 3);
    const auto xy = alpha_gamma(x, y);
    const auto yx = alpha_gamma(y, x);
    CHECK(xy.alpha == yx.gamma);
    CHECK(xy.gamma == yx.alpha);
  }
}

TEST_CASE("both class distance paths agree with brute force") {
  Rng rng(12);
  for (int t = 0; t < 1000; ++t) {
    const int k = 1 + static_cast<int>(rng.below(6));
    const int n = 1 + static_cast<int>(rng.below(12));
    const Assignment x = random_assignment(rng, n, k);
    const Assignment y = random_assignment(rng, n, k);
    const int d = brute_distance(x, y);
    const auto e = class_distance_enumerated(x, y);
    const auto m = class_distance_matching(x, y);
    CHECK(e.distance == d);
    CHECK(m.distance == d);
    CHECK(hamming(x, y.relabeled(e.relabel)) == d);
    CHECK(hamming(x, y.relabeled(m.relabel)) == d);
    CHECK(d <= hamming(x, y));
  }
}

TEST_CASE("matching path handles K above the enumeration limit") {
  Rng rng(13);
  for (int t = 0; t < 50; ++t) {
    const int k = 9 + static_cast<int>(rng.below(4));
    const Assignment x = random_assignment(rng, 30, k);
    std::vector<Label> perm(k);
    std::iota(perm.begin(), perm.end(), 1);
    rng.shuffle(std::span<Label>(perm));
    CHECK(class_distance(x, x.relabeled(perm)).distance == 0);
    const Assignment y = random_assignment(rng, 30, k);
    const auto cd = class_distance(x, y);
    CHECK(cd.distance <= hamming(x, y));
    CHECK(hamming(x, y.relabeled(cd.relabel)) == cd.distance);
    // Relabeling the estimate cannot change the distance.
    CHECK(class_distance(x, y.relabeled(perm)).distance == cd.distance);
  }
  CHECK_THROWS_AS(class_distance_enumerated(A({1, 2, 3, 4, 5, 6, 7, 8, 9}, 9), A({1, 2, 3, 4, 5, 6, 7, 8, 9}, 9)),
                  std::length_error);
}

TEST_CASE("local losses match the definition and average to the mismatch ratio") {
  Rng rng(14);
  for (int t = 0; t < 400; ++t) {
    const int k = 1 + static_cast<int>(rng.below(4));
    const int n = 1 + static_cast<int>(rng.below(10));
    const Assignment x = random_assignment(rng, n, k);
    const Assignment y = random_assignment(rng, n, k);
    const auto ll = local_losses(x, y);
    CHECK(ll == brute_local(x, y));
    const Rational sum = std::accumulate(ll.begin(), ll.end(), Rational(0));
    CHECK(sum / Rational(n) == mismatch_ratio(x, y));
  }
}

TEST_CASE("loss symmetries") {
  Rng rng(15);
  for (int t = 0; t < 300; ++t) {
    const int k = 2 + static_cast<int>(rng.below(3));
    const int n = 2 + static_cast<int>(rng.below(10));
    const Assignment x = random_assignment(rng, n, k);
    const Assignment y = random_assignment(rng, n, k);
    std::vector<int> pi(n);
    std::iota(pi.begin(), pi.end(), 0);
    rng.shuffle(std::span<int>(pi));
    std::vector<Label> delta(k);
    std::iota(delta.begin(), delta.end(), 1);
    rng.shuffle(std::span<Label>(delta));
    const int d = class_distance(x, y).distance;
    CHECK(class_distance(x.permuted(pi), y.permuted(pi)).distance == d);
    CHECK(class_distance(x.relabeled(delta), y).distance == d);
    CHECK(class_distance(y, x).distance == d);
  }
}

TEST_CASE("two communities: distance is the smaller of the two Hamming counts") {
  Rng rng(16);
  const std::vector<Label> swap{2, 1};
  for (int t = 0; t < 1000; ++t) {
    const int n = 1 + static_cast<int>(rng.below(20));
    const Assignment x = random_assignment(rng, n, 2);
    const Assignment y = random_assignment(rng, n, 2);
    CHECK(class_distance(x, y).distance == std::min(hamming(x, y), hamming(x, y.relabeled(swap))));
  }
}
