#include <cmath>
#include <map>

#include "doctest.h"
#include "sbm/bounds.hpp"
#include "sbm/loss.hpp"
#include "sbm/sampler.hpp"

using namespace sbm;

namespace {

Assignment A(std::vector<Label> labels, int k) {
  return Assignment(std::move(labels), k);
}

ModelParams rates(int n, int k, double a, double b) {
  ModelParams p;
  p.n = n;
  p.k = k;
  p.a = a;
  p.b = b;
  return p;
}

// P(T(sigma) >= T(sigma0)) by summing over every graph on n nodes.
double naive_flip(const Assignment& sigma0, const Assignment& sigma, double p, double q,
                  double lambda) {
  const int n = sigma0.n();
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.push_back({i, j});
  const Penalty pen = Penalty::fixed(lambda);
  double total = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) {
    std::vector<Edge> edges;
    double prob = 1.0;
    for (std::size_t e = 0; e < pairs.size(); ++e) {
      const auto [i, j] = pairs[e];
      const double r = sigma0[i] == sigma0[j] ? p : q;
      const bool on = (mask >> e) & 1u;
      prob *= on ? r : 1 - r;
      if (on) edges.push_back({i, j});
    }
    const Graph g = Graph::from_edges(n, edges);
    if (objective(g, sigma, pen) >= objective(g, sigma0, pen)) total += prob;
  }
  return total;
}

}  // namespace

TEST_CASE("mgf") {
  CHECK(mgf(20, 5, 100, 0.0) == 1.0);
  CHECK(mgf(20, 5, 100, 1.0) == doctest::Approx(0.948628366960935850517561).epsilon(1e-14));
  CHECK(log_mgf(20, 5, 100, 1.0) == doctest::Approx(std::log(0.948628366960935850517561)).epsilon(1e-13));
  for (auto [a, b, n] : {std::tuple{20.0, 5.0, 100.0}, {90.0, 30.0, 100.0}, {3.0, 1.0, 1000.0}, {5.001, 5.0, 100.0}}) {
    const double ts = t_star(a, b, n);
    const double I = renyi_divergence(a, b, n);
    CHECK(std::abs(I + log_mgf(a, b, n, ts)) <= 1e-12);
    CHECK(std::abs(mgf(a, b, n, ts) - std::exp(-I)) <= 1e-12);
    for (double t : {ts - 1e-3, ts + 1e-3, ts / 2, 2 * ts}) CHECK(mgf(a, b, n, ts) <= mgf(a, b, n, t));
  }
}

TEST_CASE("chernoff bound") {
  CHECK(chernoff_bound(0, 5, 0.7).value == 1.0);
  CHECK(chernoff_bound(0, 5, 0.7).log == 0.0);
  CHECK(chernoff_bound(3, 7, 0.5).value == doctest::Approx(std::exp(-1.5)));
  CHECK(chernoff_bound(3, 7, 0.5).log == -1.5);
  CHECK_THROWS_AS(chernoff_bound(-1, 7, 0.5), std::domain_error);
}

TEST_CASE("exact flip probability") {
  const Assignment s0 = A({1, 1, 2, 2}, 2);
  const ModelParams p = rates(4, 2, 3.2, 0.8);
  const Penalty pen = lambda_unified(3.2, 0.8, 4);
  CHECK(exact_flip_probability(s0, s0, p, pen) == doctest::Approx(1.0).epsilon(1e-15));
  const Assignment s = A({1, 2, 1, 2}, 2);
  const double exact = exact_flip_probability(s0, s, p, pen);
  CHECK(exact == doctest::Approx(naive_flip(s0, s, 0.8, 0.2, pen.lambda)).epsilon(1e-13));

  Rng rng(77);
  const int draws = 1000000;
  int hits = 0;
  for (int t = 0; t < draws; ++t) {
    const Graph g = sample_graph(s0, p, rng, {true});
    hits += objective(g, s, pen) >= objective(g, s0, pen);
  }
  const double se = std::sqrt(exact * (1 - exact) / draws);
  CHECK(std::abs(hits / static_cast<double>(draws) - exact) < 3 * se);

  CHECK_THROWS_AS(exact_flip_probability(A({1, 1, 1, 2, 2, 2, 1, 2}, 2), A({1, 1, 1, 2, 2, 2, 2, 1}, 2),
                                         rates(8, 2, 6.4, 1.6), pen),
                  std::length_error);
}

TEST_CASE("exact flip probability on every n = 6 pair against graph enumeration") {
  const ModelParams p = rates(6, 2, 4.8, 1.2);
  const Penalty pen = lambda_unified(4.8, 1.2, 6);
  const Assignment s0 = A({1, 1, 1, 2, 2, 2}, 2);
  const double I = renyi_divergence(4.8, 1.2, 6);
  int checked = 0;
  for (const Assignment& s :
       {A({1, 1, 2, 1, 2, 2}, 2), A({2, 1, 1, 1, 2, 2}, 2), A({1, 2, 2, 1, 1, 2}, 2)}) {
    const double exact = exact_flip_probability(s0, s, p, pen);
    CHECK(exact == doctest::Approx(naive_flip(s0, s, 0.8, 0.2, pen.lambda)).epsilon(1e-12));
    const auto ag = alpha_gamma(s, s0);
    CHECK(exact <= chernoff_bound(ag.alpha, ag.gamma, I).value);
    ++checked;
  }
  CHECK(checked == 3);
}

TEST_CASE("alpha gamma lower bound") {
  CHECK(c_beta(1.0) == doctest::Approx(2.0 / 13.0).epsilon(1e-15));
  CHECK_THROWS_AS(c_beta(std::sqrt(5.0 / 3.0)), std::domain_error);
  CHECK_THROWS_AS(c_beta(0.9), std::domain_error);
  CHECK(min_alpha_gamma_bound(10, 2, 1, 1.0) == 4.0);
  CHECK(min_alpha_gamma_bound(10, 2, 3, 1.0) == doctest::Approx(2.0 * 10 * 3 / 18.0));
  CHECK(min_alpha_gamma_bound(10, 2, 1, 1.0, 0.5) == 1.5);
  CHECK(min_alpha_gamma_bound(12, 2, 2, 1.2) == doctest::Approx(12.0 * 2 / 2.4 - 4));
  CHECK(min_alpha_gamma_bound(12, 2, 4, 1.2) == doctest::Approx(c_beta(1.2) * 24));
  CHECK_THROWS_AS(min_alpha_gamma_bound(10, 2, 0, 1.0), std::domain_error);
  CHECK_THROWS_AS(min_alpha_gamma_bound(10, 2, 10, 1.0), std::domain_error);
  CHECK_THROWS_AS(min_alpha_gamma_bound(10, 2, 1, 1.3), std::domain_error);

  CHECK(repairing_eta(10, 2, 1, 1.0, 4.0) == 0.0);
  const double eta = repairing_eta(10, 2, 1, 1.0, 3.0);
  CHECK(eta == doctest::Approx(0.2));
  CHECK(min_alpha_gamma_bound(10, 2, 1, 1.0, eta) == doctest::Approx(3.0));
}

TEST_CASE("alpha gamma lower bound holds on enumerated pairs") {
  for (double beta : {1.0, 1.2}) {
    for (int k : {2, 3}) {
      for (int n = 2 * k; n <= 9; ++n) {
        const auto rule = SizeConstraint::for_space(n, k, beta, SpaceKind::general());
        const auto classes = enumerate_classes(rule);
        for (const auto& s0 : classes) {
          for (const auto& s : classes) {
            const int m = class_distance(s0, s).distance;
            if (m == 0) continue;
            const auto ag = alpha_gamma(s, s0);
            CAPTURE(n);
            CAPTURE(k);
            CAPTURE(m);
            CHECK(static_cast<double>(std::min(ag.alpha, ag.gamma)) >= min_alpha_gamma_bound(n, k, m, beta));
          }
        }
      }
    }
  }
}

TEST_CASE("cardinality bound") {
  CHECK(cardinality_bound(8, 2, 1) == doctest::Approx(std::log(16.0) + 1.0));
  CHECK(cardinality_bound(8, 2, 7) == doctest::Approx(8 * std::log(2.0)));
  CHECK_THROWS_AS(cardinality_bound(8, 2, 0), std::domain_error);

  // Classes of partitions into at most K blocks at each distance from sigma0.
  for (int k : {2, 3}) {
    for (int n = 3; n <= 8; ++n) {
      std::vector<Assignment> all;
      for (int used = 1; used <= k; ++used) {
        for_each_class(SizeConstraint::interval(n, used, 1, n), [&](const std::vector<int>& labels, int) {
          all.push_back(Assignment::from_zero_based(labels, k));
        });
      }
      std::map<int, int> by_distance;
      const Assignment& s0 = all.back();
      for (const auto& s : all) ++by_distance[class_distance(s0, s).distance];
      for (const auto& [m, count] : by_distance) {
        if (m == 0 || m >= n) continue;
        CHECK(std::log(static_cast<double>(count)) <= cardinality_bound(n, k, m) + 1e-12);
      }
    }
  }
}

TEST_CASE("binomial tails") {
  for (double a : {20.0, 50.0, 99.0}) {
    for (double b : {0.0, 5.0, 19.0}) {
      const double closed = 1 - (1 - b / 100) * (a / 100);
      CHECK(binomial_tail_exact(1, a, b, 100).value == doctest::Approx(closed).epsilon(1e-15));
    }
  }
  CHECK(binomial_tail_exact(3, 20, 5, 100).value == doctest::Approx(113493.0 / 200000).epsilon(1e-14));
  CHECK(binomial_tail_exact(3, 20, 5, 100, true).value == doctest::Approx(3791.0 / 50000).epsilon(1e-14));
  CHECK(binomial_tail_exact(8, 20, 5, 100).value == doctest::Approx(0.2983835351678945).epsilon(1e-14));
  for (int np : {1, 4, 17}) {
    const auto tie_inclusive = binomial_tail_exact(np, 30, 30, 100);
    const auto strict = binomial_tail_exact(np, 30, 30, 100, true);
    CHECK(tie_inclusive.value >= 0.5);
    CHECK(tie_inclusive.value == doctest::Approx(1 - strict.value));
  }
  const auto deep = binomial_tail_exact(5000, 60, 5, 100);
  CHECK(std::isfinite(deep.log));
  CHECK(deep.log < -1000);
  CHECK_THROWS_AS(binomial_tail_exact(0, 20, 5, 100), std::invalid_argument);
}

TEST_CASE("tail rate ratio is at least one and falls toward one") {
  // Chernoff: P(X >= Y) <= M(t*)^{n'} = exp(-n' I).
  for (auto [a, b] : {std::pair{20.0, 5.0}, {40.0, 10.0}, {60.0, 30.0}, {8.0, 1.0}}) {
    double prev = INFINITY;
    for (int np : {1, 4, 16, 64, 256, 1024}) {
      const double ratio = tail_rate_ratio(np, a, b, 100);
      CHECK(ratio >= 1.0);
      CHECK(ratio < prev);
      prev = ratio;
    }
  }
}

TEST_CASE("local Bayes test") {
  const std::vector<int> j0{1, 2, 3};
  const std::vector<int> j1{4, 5, 6};
  CHECK(local_bayes_test(Graph(7), 0, j0, j1) == BayesDecision::keep);
  const std::vector<Edge> to_j1{{0, 4}, {0, 5}, {0, 6}};
  CHECK(local_bayes_test(Graph::from_edges(7, to_j1), 0, j0, j1) == BayesDecision::flip);
  const std::vector<Edge> tie{{0, 1}, {0, 5}};
  CHECK(local_bayes_test(Graph::from_edges(7, tie), 0, j0, j1) == BayesDecision::keep);
  const std::vector<int> overlap{3, 4};
  CHECK_THROWS_AS(local_bayes_test(Graph(7), 0, j0, overlap), std::invalid_argument);
  const std::vector<int> self{0};
  CHECK_THROWS_AS(local_bayes_test(Graph(7), 0, self, j1), std::invalid_argument);
}

TEST_CASE("local Bayes test errs at the strict tail rate") {
  const int np = 6;
  const double a = 30, b = 10, n = 100;
  Rng rng(88);
  std::vector<int> j0, j1;
  for (int u = 1; u <= np; ++u) j0.push_back(u);
  for (int u = np + 1; u <= 2 * np; ++u) j1.push_back(u);
  const int draws = 200000;
  int flips = 0;
  for (int t = 0; t < draws; ++t) {
    std::vector<Edge> edges;
    for (int u : j0)
      if (rng.bernoulli(a / n)) edges.push_back({0, u});
    for (int u : j1)
      if (rng.bernoulli(b / n)) edges.push_back({0, u});
    flips += local_bayes_test(Graph::from_edges(2 * np + 1, edges), 0, j0, j1) == BayesDecision::flip;
  }
  const double exact = binomial_tail_exact(np, a, b, n, true).value;
  const double se = std::sqrt(exact * (1 - exact) / draws);
  CHECK(std::abs(flips / static_cast<double>(draws) - exact) < 3 * se);
}

TEST_CASE("bound report") {
  BoundRequest req;
  req.n = 100;
  req.k = 2;
  req.a = 20;
  req.b = 5;
  const BoundReport r = bound_report(req);
  CHECK(r.I == renyi_divergence(20, 5, 100));
  CHECK(r.lambda == lambda_weighted(20, 5, 100, 0.5).lambda);
  CHECK(r.n_prime == 50);
  CHECK(*r.alpha_gamma_min_bound == 49.0);
  CHECK(r.chernoff->log == doctest::Approx(-49 * r.I));
  CHECK(r.tail_exact.value == binomial_tail_exact(50, 20, 5, 100).value);
  const auto j = to_json(r);
  std::vector<std::string> keys;
  for (const auto& [key, value] : j.items()) keys.push_back(key);
  CHECK(keys == std::vector<std::string>{"n", "K", "a", "b", "beta", "w", "I", "t_star", "M_tstar",
                                         "log_M_tstar", "lambda", "c_beta", "m",
                                         "alpha_gamma_min_bound", "chernoff", "log_chernoff",
                                         "cardinality", "log_cardinality", "log_union_bound",
                                         "n_prime", "tail_exact", "log_tail_exact",
                                         "tail_rate_ratio"});
  req.beta = 2.0;
  const auto wide = to_json(bound_report(req));
  CHECK(wide["c_beta"].is_null());
  CHECK(wide["chernoff"].is_null());
  CHECK(wide["log_cardinality"].is_number());
  req.w = 0.3;
  CHECK_THROWS_AS(bound_report(req), std::invalid_argument);
}
