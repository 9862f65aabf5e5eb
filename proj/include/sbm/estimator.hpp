#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sbm/core.hpp"
#include "sbm/rng.hpp"

namespace sbm {

// Per-pair charge on within-community pairs in T(sigma).
struct Penalty {
  double lambda = 0.5;
  double w = 0.5;
  double t_star = 0.0;

  // A bare threshold with no (a, b) behind it; t_star is left at 0.
  static Penalty fixed(double lambda);
};

// t* = 1/2 log( a (1 - b/n) / (b (1 - a/n)) ). Throws std::domain_error
// unless 0 < b < a < n.
double t_star(double a, double b, double n);

// lambda = log((1 - b/n) / (1 - a/n)) / log( a (1 - b/n) / (b (1 - a/n)) ).
Penalty lambda_unified(double a, double b, double n);

// lambda = -(w/t*) log((a/n) e^{-t*} + 1 - a/n)
//          + ((1 - w)/t*) log((b/n) e^{t*} + 1 - b/n).
// When k is given and equals 2, only w = 1/2 is accepted. Throws
// std::domain_error on invalid rates or w outside [0, 1], and
// std::invalid_argument for the K = 2 restriction.
Penalty lambda_weighted(double a, double b, double n, double w,
                        std::optional<int> k = std::nullopt);

struct WithinBlock {
  std::int64_t edges = 0;  // sum_{i<j} A_ij 1{sigma(i) = sigma(j)}
  std::int64_t pairs = 0;  // sum_{i<j} 1{sigma(i) = sigma(j)}
};

WithinBlock within_block(const Graph& graph, const Assignment& sigma);

// T = edges - lambda * pairs. Every solver evaluates T through this
// expression so that equal (edges, pairs) always compare equal.
inline double objective_value(WithinBlock wb, const Penalty& penalty) {
  return static_cast<double>(wb.edges) - penalty.lambda * static_cast<double>(wb.pairs);
}

double objective(const Graph& graph, const Assignment& sigma, const Penalty& penalty);

inline constexpr double kDefaultEnumerationCap = 1e7;

class EnumerationCapExceeded : public std::runtime_error {
 public:
  EnumerationCapExceeded(double estimate, double cap);
  double estimate() const { return estimate_; }
  double cap() const { return cap_; }

 private:
  double estimate_;
  double cap_;
};

// Number of equivalence classes (partitions into exactly K nonempty blocks)
// admitted by `rule`, evaluated in log-space and rounded. Used for the
// enumeration cap; enumerators report the exact count they visit.
double count_classes(const SizeConstraint& rule);

// Visits one canonical representative (0-based labels, renumbered by first
// occurrence) per class admitted by `rule`, in lexicographic order. The
// second argument is the first position that differs from the previous
// visit. Throws EnumerationCapExceeded before visiting anything when
// count_classes exceeds `cap`.
void for_each_class(const SizeConstraint& rule,
                    const std::function<void(const std::vector<int>&, int)>& visit,
                    double cap = kDefaultEnumerationCap);

std::vector<Assignment> enumerate_classes(const SizeConstraint& rule,
                                          double cap = kDefaultEnumerationCap);
std::vector<Assignment> enumerate_classes(int n, int k, const SpaceKind& kind,
                                          double beta = 1.0,
                                          double cap = kDefaultEnumerationCap);

struct ExhaustiveOptions {
  double cap = kDefaultEnumerationCap;
  bool keep_ties = false;
};

struct ExhaustiveResult {
  // Lexicographically smallest canonical maximizer.
  Assignment best;
  double objective = 0.0;
  WithinBlock counts;
  // Every canonical maximizer in lexicographic order, when keep_ties is set.
  std::vector<Assignment> ties;
  std::uint64_t classes = 0;
};

ExhaustiveResult solve_exhaustive(const Graph& graph, const SizeConstraint& rule,
                                  const Penalty& penalty, ExhaustiveOptions options = {});
ExhaustiveResult solve_exhaustive(const Graph& graph, const ModelParams& params,
                                  const SpaceKind& kind, const Penalty& penalty,
                                  ExhaustiveOptions options = {});

struct GreedyResult {
  Assignment assignment;
  double objective = 0.0;
  WithinBlock counts;
  int sweeps = 0;
  std::int64_t moves = 0;
  bool converged = false;
};

// Node-wise ascent: nodes are visited in index order and each moves to the
// label with the largest strictly positive gain in T (smallest label on
// ties) among moves that keep the sizes admitted by `rule`. Stops after a
// sweep with no move or after max_sweeps sweeps. Throws
// std::invalid_argument when init is not admitted by `rule`.
GreedyResult solve_greedy(const Graph& graph, const Assignment& init, const Penalty& penalty,
                          int max_sweeps, const SizeConstraint& rule);

// Best of `restarts` greedy runs from assignments drawn uniformly from
// `rule`; earlier runs win ties.
GreedyResult solve_greedy_restarts(const Graph& graph, const SizeConstraint& rule,
                                   const Penalty& penalty, int restarts, int max_sweeps,
                                   Rng& rng);

}  // namespace sbm
