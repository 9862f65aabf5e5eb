#include "sbm/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "sbm/loss.hpp"
#include "size_table.hpp"

namespace sbm {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double binomial_log_pmf(int trials, int k, double p) {
  if (p <= 0.0) return k == 0 ? 0.0 : kNegInf;
  if (p >= 1.0) return k == trials ? 0.0 : kNegInf;
  return detail::log_choose(trials, k) + k * std::log(p) + (trials - k) * std::log1p(-p);
}

std::vector<double> binomial_log_pmfs(int trials, double p) {
  std::vector<double> out(trials + 1);
  for (int k = 0; k <= trials; ++k) out[k] = binomial_log_pmf(trials, k, p);
  return out;
}

void require_unit_rates(double a, double b, double n, const char* who) {
  if (!(n > 0.0 && a >= 0.0 && b >= 0.0 && a <= n && b <= n)) {
    throw std::domain_error(std::string(who) + ": need 0 <= a, b <= n");
  }
}

bool beta_in_range(double beta) {
  return beta >= 1.0 && beta < std::sqrt(5.0 / 3.0);
}

struct BoundTerms {
  double lead;  // coefficient multiplied by (1 - eta)
  double shift;
};

BoundTerms alpha_gamma_terms(int n, int k, int m, double beta) {
  if (!beta_in_range(beta)) {
    throw std::domain_error("min_alpha_gamma_bound: need 1 <= beta < sqrt(5/3), got " +
                            std::to_string(beta));
  }
  if (m <= 0 || m >= n || k < 1) {
    throw std::domain_error("min_alpha_gamma_bound: need 0 < m < n and K >= 1");
  }
  const double nm_k = static_cast<double>(n) * m / k;
  const double sq = static_cast<double>(m) * m;
  const bool small = 2.0 * k * m <= n;
  if (beta == 1.0) {
    return small ? BoundTerms{nm_k, sq} : BoundTerms{2.0 * nm_k / 9.0, 0.0};
  }
  return small ? BoundTerms{nm_k / beta, sq} : BoundTerms{c_beta(beta) * nm_k, 0.0};
}

}  // namespace

LogProb LogProb::from_log(double log_value) {
  return {std::exp(log_value), log_value};
}

double log_mgf(double a, double b, double n, double t) {
  require_unit_rates(a, b, n, "mgf");
  return std::log1p(b / n * std::expm1(t)) + std::log1p(a / n * std::expm1(-t));
}

double mgf(double a, double b, double n, double t) {
  require_unit_rates(a, b, n, "mgf");
  return (1.0 + b / n * std::expm1(t)) * (1.0 + a / n * std::expm1(-t));
}

LogProb chernoff_bound(std::int64_t alpha, std::int64_t gamma, double I) {
  if (alpha < 0 || gamma < 0 || !(I >= 0.0)) {
    throw std::domain_error("chernoff_bound: need alpha, gamma >= 0 and I >= 0");
  }
  const std::int64_t m = std::min(alpha, gamma);
  if (m == 0) return {1.0, 0.0};
  return LogProb::from_log(-static_cast<double>(m) * I);
}

double exact_flip_probability(const Assignment& sigma0, const Assignment& sigma,
                              const ModelParams& params, const Penalty& penalty, int max_pairs) {
  if (sigma0.n() != params.n || sigma.n() != params.n) {
    throw std::invalid_argument("exact_flip_probability: assignment length differs from n");
  }
  const long long pairs = static_cast<long long>(params.n) * (params.n - 1) / 2;
  if (pairs > max_pairs) {
    throw std::length_error("exact_flip_probability: n(n-1)/2 = " + std::to_string(pairs) +
                            " exceeds the limit " + std::to_string(max_pairs));
  }
  const AlphaGamma ag = alpha_gamma(sigma, sigma0);
  const int alpha = static_cast<int>(ag.alpha);
  const int gamma = static_cast<int>(ag.gamma);
  const auto gained = binomial_log_pmfs(gamma, params.p_between());
  const auto lost = binomial_log_pmfs(alpha, params.p_within());
  // Ties count as flips; the slack absorbs rounding in lambda.
  const double threshold = penalty.lambda * static_cast<double>(gamma - alpha);
  const double slack = 1e-9 * std::max(1.0, std::abs(threshold));
  double total = 0.0;
  for (int x = 0; x <= gamma; ++x) {
    for (int y = 0; y <= alpha; ++y) {
      if (static_cast<double>(x) - static_cast<double>(y) >= threshold - slack) {
        total += std::exp(gained[x] + lost[y]);
      }
    }
  }
  return std::min(total, 1.0);
}

double c_beta(double beta) {
  if (!beta_in_range(beta)) {
    throw std::domain_error("c_beta: need 1 <= beta < sqrt(5/3), got " + std::to_string(beta));
  }
  const double s = (5.0 - 3.0 * beta * beta) * (5.0 - 3.0 * beta * beta);
  return s / (2.0 * beta * (1.0 + 3.0 * s));
}

double min_alpha_gamma_bound(int n, int k, int m, double beta, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw std::domain_error("min_alpha_gamma_bound: eta in [0, 1]");
  const BoundTerms t = alpha_gamma_terms(n, k, m, beta);
  return (1.0 - eta) * t.lead - t.shift;
}

double repairing_eta(int n, int k, int m, double beta, double observed) {
  const BoundTerms t = alpha_gamma_terms(n, k, m, beta);
  if (t.lead - t.shift <= observed) return 0.0;
  return std::clamp(1.0 - (observed + t.shift) / t.lead, 0.0, 1.0);
}

double cardinality_bound(int n, int k, int m) {
  if (m <= 0 || m >= n || k < 1) throw std::domain_error("cardinality_bound: need 0 < m < n");
  const double by_distance = m * (1.0 + std::log(static_cast<double>(n) * k / m));
  const double by_total = n * std::log(static_cast<double>(k));
  return std::min(by_distance, by_total);
}

LogProb binomial_tail_exact(int n_prime, double a, double b, double n, bool strict) {
  if (n_prime < 1) throw std::invalid_argument("binomial_tail_exact: n' must be >= 1");
  require_unit_rates(a, b, n, "binomial_tail_exact");
  const auto lx = binomial_log_pmfs(n_prime, b / n);
  const auto ly = binomial_log_pmfs(n_prime, a / n);
  // suffix[y] = log P(X >= y)
  std::vector<double> suffix(n_prime + 2, kNegInf);
  for (int x = n_prime; x >= 0; --x) suffix[x] = detail::log_add(suffix[x + 1], lx[x]);
  double acc = kNegInf;
  for (int y = 0; y <= n_prime; ++y) {
    acc = detail::log_add(acc, ly[y] + suffix[strict ? y + 1 : y]);
  }
  return LogProb::from_log(std::min(acc, 0.0));
}

double tail_rate_ratio(int n_prime, double a, double b, double n) {
  const double I = renyi_divergence(a, b, n);
  return -binomial_tail_exact(n_prime, a, b, n).log / (n_prime * I);
}

BayesDecision local_bayes_test(const Graph& graph, int node, std::span<const int> j0,
                               std::span<const int> j1) {
  const int n = graph.n();
  if (node < 0 || node >= n) throw std::invalid_argument("local_bayes_test: node out of range");
  std::vector<char> mark(n, 0);
  mark[node] = 3;
  auto tally = [&](std::span<const int> set, char tag) {
    int sum = 0;
    for (int u : set) {
      if (u < 0 || u >= n) throw std::invalid_argument("local_bayes_test: index out of range");
      if (mark[u] == 3) throw std::invalid_argument("local_bayes_test: set contains the node");
      if (mark[u] != 0) throw std::invalid_argument("local_bayes_test: J0 and J1 overlap");
      mark[u] = tag;
      sum += graph.has_edge(node, u);
    }
    return sum;
  };
  const int s0 = tally(j0, 1);
  const int s1 = tally(j1, 2);
  return s0 >= s1 ? BayesDecision::keep : BayesDecision::flip;
}

BoundReport bound_report(const BoundRequest& req) {
  if (req.k < 1 || req.n < req.k) throw std::invalid_argument("bounds: need 1 <= K <= n");
  BoundReport r;
  r.n = req.n;
  r.k = req.k;
  r.a = req.a;
  r.b = req.b;
  r.beta = req.beta;
  const Penalty pen = lambda_weighted(req.a, req.b, req.n, req.w, req.k);
  r.w = pen.w;
  r.lambda = pen.lambda;
  r.t_star = pen.t_star;
  r.I = renyi_divergence(req.a, req.b, req.n);
  r.log_M_tstar = log_mgf(req.a, req.b, req.n, r.t_star);
  r.M_tstar = std::exp(r.log_M_tstar);
  r.m = req.m;
  if (req.m <= 0 || req.m >= req.n) throw std::domain_error("bounds: need 0 < m < n");
  r.log_cardinality = cardinality_bound(req.n, req.k, req.m);
  if (beta_in_range(req.beta)) {
    r.c_beta = c_beta(req.beta);
    r.alpha_gamma_min_bound = min_alpha_gamma_bound(req.n, req.k, req.m, req.beta);
    r.chernoff = LogProb::from_log(-std::max(0.0, *r.alpha_gamma_min_bound) * r.I);
    r.log_union_bound = *r.log_cardinality + r.chernoff->log;
  }
  r.n_prime = req.n_prime.value_or(std::max(1, req.n / req.k));
  r.tail_exact = binomial_tail_exact(r.n_prime, req.a, req.b, req.n);
  r.tail_rate_ratio = -r.tail_exact.log / (r.n_prime * r.I);
  return r;
}

nlohmann::ordered_json to_json(const BoundReport& r) {
  auto opt = [](const std::optional<double>& v) {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
  };
  nlohmann::ordered_json j;
  j["n"] = r.n;
  j["K"] = r.k;
  j["a"] = r.a;
  j["b"] = r.b;
  j["beta"] = r.beta;
  j["w"] = r.w;
  j["I"] = r.I;
  j["t_star"] = r.t_star;
  j["M_tstar"] = r.M_tstar;
  j["log_M_tstar"] = r.log_M_tstar;
  j["lambda"] = r.lambda;
  j["c_beta"] = opt(r.c_beta);
  j["m"] = r.m;
  j["alpha_gamma_min_bound"] = opt(r.alpha_gamma_min_bound);
  j["chernoff"] = r.chernoff ? nlohmann::ordered_json(r.chernoff->value) : nullptr;
  j["log_chernoff"] = r.chernoff ? nlohmann::ordered_json(r.chernoff->log) : nullptr;
  j["cardinality"] =
      r.log_cardinality ? nlohmann::ordered_json(std::exp(*r.log_cardinality)) : nullptr;
  j["log_cardinality"] = opt(r.log_cardinality);
  j["log_union_bound"] = opt(r.log_union_bound);
  j["n_prime"] = r.n_prime;
  j["tail_exact"] = r.tail_exact.value;
  j["log_tail_exact"] = r.tail_exact.log;
  j["tail_rate_ratio"] = r.tail_rate_ratio;
  return j;
}

}  // namespace sbm
