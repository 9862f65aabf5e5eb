#include <algorithm>
#include <cmath>
#include <map>

#include "doctest.h"
#include "sbm/sampler.hpp"

using namespace sbm;

namespace {

ModelParams rates(int n, int k, double a, double b) {
  ModelParams p;
  p.n = n;
  p.k = k;
  p.a = a;
  p.b = b;
  return p;
}

double chi_square(const std::map<std::vector<Label>, int>& counts, int cells, int draws) {
  const double expected = static_cast<double>(draws) / cells;
  double stat = 0.0;
  for (const auto& [key, c] : counts) stat += (c - expected) * (c - expected) / expected;
  stat += (cells - static_cast<int>(counts.size())) * expected;
  return stat;
}

}  // namespace

TEST_CASE("random stream matches the reference generator") {
  Rng rng(5489);
  std::uint64_t x = 0;
  for (int i = 0; i < 10000; ++i) x = rng.next_u64();
  CHECK(x == 9981545732273789042ULL);
  CHECK(derive_stream_seed(1, 0) != derive_stream_seed(1, 1));
  CHECK(derive_stream_seed(1, 7) == derive_stream_seed(1, 7));
}

TEST_CASE("below is in range and covers every value") {
  Rng rng(3);
  std::vector<int> seen(7, 0);
  for (int i = 0; i < 7000; ++i) {
    const auto v = rng.below(7);
    REQUIRE(v < 7);
    ++seen[v];
  }
  for (int c : seen) CHECK(c > 800);
}

TEST_CASE("degenerate rates give disjoint cliques") {
  const Assignment sigma({1, 2, 1, 3, 2, 3, 1}, 3);
  ModelParams p = rates(7, 3, 7.0, 0.0);
  Rng rng(11);
  CHECK_THROWS_AS(sample_graph(sigma, p, rng), std::invalid_argument);
  const Graph g = sample_graph(sigma, p, rng, {true});
  for (int i = 0; i < 7; ++i) {
    for (int j = 0; j < 7; ++j) CHECK(g.has_edge(i, j) == (i != j && sigma[i] == sigma[j]));
  }
}

TEST_CASE("sampled graphs are symmetric, loop-free and reproducible") {
  const Assignment sigma({1, 1, 2, 2, 1, 2, 2, 1, 1, 2}, 2);
  const ModelParams p = rates(10, 2, 5.0, 2.0);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng r1(seed), r2(seed);
    const Graph g = sample_graph(sigma, p, r1);
    CHECK(g == sample_graph(sigma, p, r2));
    for (int i = 0; i < 10; ++i) {
      CHECK_FALSE(g.has_edge(i, i));
      for (int j = 0; j < 10; ++j) CHECK(g.has_edge(i, j) == g.has_edge(j, i));
    }
  }
}

TEST_CASE("fixed pair frequency at rate one half") {
  const Assignment sigma({1, 1, 2, 2, 1, 2, 1, 2, 1, 2, 1, 2, 1, 2, 1, 2, 1, 2, 1, 2}, 2);
  const ModelParams p = rates(20, 2, 10.0, 10.0);
  Rng rng(2024);
  const int draws = 100000;
  int hits = 0;
  for (int t = 0; t < draws; ++t) hits += sample_graph(sigma, p, rng, {true}).has_edge(0, 1);
  const double se = std::sqrt(0.25 / draws);
  CHECK(std::abs(static_cast<double>(hits) / draws - 0.5) < 3 * se);
}

TEST_CASE("within and between edge frequencies match a/n and b/n") {
  const int n = 100;
  std::vector<Label> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = 1 + (i % 2);
  const Assignment sigma(labels, 2);
  const ModelParams p = rates(n, 2, 20.0, 5.0);
  Rng rng(99);
  long long within = 0, within_edges = 0, between = 0, between_edges = 0;
  while (within < 100000 || between < 100000) {
    const Graph g = sample_graph(sigma, p, rng);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (sigma[i] == sigma[j]) {
          ++within;
          within_edges += g.has_edge(i, j);
        } else {
          ++between;
          between_edges += g.has_edge(i, j);
        }
      }
    }
  }
  const double pw = static_cast<double>(within_edges) / within;
  const double pb = static_cast<double>(between_edges) / between;
  CHECK(std::abs(pw - 0.2) < 3 * std::sqrt(0.2 * 0.8 / within));
  CHECK(std::abs(pb - 0.05) < 3 * std::sqrt(0.05 * 0.95 / between));
}

TEST_CASE("inhomogeneous rates are taken from theta") {
  const Assignment sigma({1, 1, 2}, 2);
  ModelParams p = rates(3, 2, 1.5, 0.3);
  p.theta = std::vector<double>{0, 1, 0, 1, 0, 0, 0, 0, 0};
  Rng rng(1);
  const Graph g = sample_graph(sigma, p, rng);
  CHECK(g.has_edge(0, 1));
  CHECK(g.num_edges() == 1);
}

TEST_CASE("balanced assignments of four nodes are uniform") {
  const ModelParams p = rates(4, 2, 2.0, 1.0);
  Rng rng(7);
  std::map<std::vector<Label>, int> counts;
  const int draws = 100000;
  for (int t = 0; t < draws; ++t) {
    const Assignment s = sample_assignment(p, SpaceKind::equal_size(0.0), rng);
    REQUIRE(s.sizes() == std::vector<int>{2, 2});
    ++counts[std::vector<Label>(s.labels().begin(), s.labels().end())];
  }
  CHECK(counts.size() == 6);
  CHECK(chi_square(counts, 6, draws) < 20.52);  // 0.999 quantile, 5 df
}

TEST_CASE("two balanced nodes split evenly") {
  const ModelParams p = rates(2, 2, 1.0, 0.5);
  Rng rng(8);
  int first = 0;
  const int draws = 20000;
  for (int t = 0; t < draws; ++t) {
    const Assignment s = sample_assignment(p, SpaceKind::equal_size(0.0), rng);
    REQUIRE(s.sizes() == std::vector<int>{1, 1});
    first += s[0] == 1;
  }
  CHECK(std::abs(first / static_cast<double>(draws) - 0.5) < 3 * std::sqrt(0.25 / draws));
}

TEST_CASE("unequal size vectors are weighted by their assignment counts") {
  // n = 5, K = 2, no size limit: 2^5 - 2 = 30 labelled assignments.
  const auto rule = SizeConstraint::for_space(5, 2, INFINITY, SpaceKind::general());
  CHECK(std::exp(log_space_size(rule)) == doctest::Approx(30.0));
  Rng rng(9);
  std::map<std::vector<Label>, int> counts;
  const int draws = 60000;
  for (int t = 0; t < draws; ++t) {
    const Assignment s = sample_assignment(rule, rng);
    ++counts[std::vector<Label>(s.labels().begin(), s.labels().end())];
  }
  CHECK(counts.size() == 30);
  CHECK(chi_square(counts, 30, draws) < 58.3);  // 0.999 quantile, 29 df
}

TEST_CASE("least favorable draws use the constructed profile") {
  const ModelParams p = rates(10, 3, 6.0, 1.0);
  Rng rng(10);
  for (int t = 0; t < 200; ++t) {
    auto sizes = sample_assignment(p, SpaceKind::least_favorable(), rng).sizes();
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<int>{3, 3, 4});
  }
}

TEST_CASE("infeasible spaces are refused") {
  const ModelParams p = rates(5, 2, 3.0, 1.0);
  Rng rng(1);
  CHECK_THROWS_AS(sample_assignment(p, SpaceKind::equal_size(0.0), rng), std::invalid_argument);
  CHECK_THROWS_AS(sample_assignment(rates(3, 4, 2.0, 1.0), SpaceKind::general(), rng),
                  std::invalid_argument);
}
