#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "json.hpp"

#include "sbm/core.hpp"
#include "sbm/estimator.hpp"

namespace sbm {

// A probability (or bound) kept together with its natural log.
struct LogProb {
  double value = 1.0;
  double log = 0.0;

  static LogProb from_log(double log_value);
};

// M(t) = (e^t b/n + 1 - b/n)(e^{-t} a/n + 1 - a/n), the mgf of X - Y with
// X ~ Ber(b/n), Y ~ Ber(a/n) independent.
double mgf(double a, double b, double n, double t);
double log_mgf(double a, double b, double n, double t);

// exp(-min(alpha, gamma) I). Throws std::domain_error for negative inputs.
LogProb chernoff_bound(std::int64_t alpha, std::int64_t gamma, double I);

inline constexpr int kMaxFlipPairs = 22;

// P(T(sigma) >= T(sigma0)) when A is drawn from the homogeneous model at
// sigma0 with rates params.p_within(), params.p_between(). Only the alpha +
// gamma pairs whose within-block indicator differs between sigma and sigma0
// enter the difference:
//   T(sigma) - T(sigma0) = S_gamma - S_alpha - lambda (gamma - alpha),
//   S_gamma ~ Bin(gamma, b/n), S_alpha ~ Bin(alpha, a/n),
// and the sum runs over all (S_gamma, S_alpha) outcomes. Ties count as
// flips, up to a 1e-9 relative slack on the threshold. Rates are not
// validated, so degenerate corners are allowed. Throws std::length_error
// when n(n-1)/2 > max_pairs.
double exact_flip_probability(const Assignment& sigma0, const Assignment& sigma,
                              const ModelParams& params, const Penalty& penalty,
                              int max_pairs = kMaxFlipPairs);

// (5 - 3 beta^2)^2 / (2 beta (1 + 3 (5 - 3 beta^2)^2)).
double c_beta(double beta);

// Lower bound on min(alpha, gamma) over sigma at distance m from sigma0:
//   beta = 1:  (1 - eta) n m / K - m^2      if m <= n/(2K)
//              2 (1 - eta) n m / (9K)       otherwise
//   beta > 1:  (1 - eta) n m / (K beta) - m^2   if m <= n/(2K)
//              (1 - eta) c_beta n m / K        otherwise
// Requires 1 <= beta < sqrt(5/3), 0 < m < n, 0 <= eta <= 1; throws
// std::domain_error otherwise.
double min_alpha_gamma_bound(int n, int k, int m, double beta, double eta = 0.0);

// Smallest eta >= 0 with min_alpha_gamma_bound(n, k, m, beta, eta) <= observed.
double repairing_eta(int n, int k, int m, double beta, double observed);

// log min{ (e n K / m)^m, K^n }. Requires 0 < m < n.
double cardinality_bound(int n, int k, int m);

// P(X >= Y) (or P(X > Y) when strict) for independent X ~ Bin(n', b/n),
// Y ~ Bin(n', a/n), by convolving the two mass functions in log-space.
LogProb binomial_tail_exact(int n_prime, double a, double b, double n, bool strict = false);

// -log(binomial_tail_exact(n', a, b, n)) / (n' I).
double tail_rate_ratio(int n_prime, double a, double b, double n);

enum class BayesDecision { keep, flip };

// keep iff sum_{u in J0} A_{node,u} >= sum_{u in J1} A_{node,u}. Throws
// std::invalid_argument when J0 and J1 overlap, contain `node`, or hold an
// out-of-range index.
BayesDecision local_bayes_test(const Graph& graph, int node, std::span<const int> j0,
                               std::span<const int> j1);

struct BoundReport {
  int n = 0;
  int k = 2;
  double a = 0.0;
  double b = 0.0;
  double beta = 1.0;
  double w = 0.5;
  double I = 0.0;
  double t_star = 0.0;
  double M_tstar = 0.0;
  double log_M_tstar = 0.0;
  double lambda = 0.0;
  // Absent when beta lies outside [1, sqrt(5/3)).
  std::optional<double> c_beta;
  int m = 1;
  std::optional<double> alpha_gamma_min_bound;
  std::optional<LogProb> chernoff;
  std::optional<double> log_cardinality;
  std::optional<double> log_union_bound;
  int n_prime = 0;
  LogProb tail_exact;
  double tail_rate_ratio = 0.0;
};

struct BoundRequest {
  int n = 0;
  int k = 2;
  double a = 0.0;
  double b = 0.0;
  double beta = 1.0;
  double w = 0.5;
  int m = 1;
  // Defaults to floor(n / K).
  std::optional<int> n_prime;
};

// Throws std::domain_error / std::invalid_argument on invalid rates or
// sizes.
BoundReport bound_report(const BoundRequest& request);

// Flat object with keys n, K, a, b, beta, w, I, t_star, M_tstar, log_M_tstar,
// lambda, c_beta, m, alpha_gamma_min_bound, chernoff, log_chernoff,
// cardinality, log_cardinality, log_union_bound, n_prime, tail_exact,
// log_tail_exact, tail_rate_ratio, in that order. Unavailable entries are
// null.
nlohmann::ordered_json to_json(const BoundReport& report);

}  // namespace sbm
