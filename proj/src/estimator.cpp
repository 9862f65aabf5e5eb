#include "sbm/estimator.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "class_walk.hpp"
#include "sbm/sampler.hpp"

namespace sbm {
namespace {

void require_rates(double a, double b, double n, const char* who) {
  if (!(b > 0.0 && b < a && a < n)) {
    throw std::domain_error(std::string(who) + ": need 0 < b < a < n, got a=" + std::to_string(a) +
                            " b=" + std::to_string(b) + " n=" + std::to_string(n));
  }
}

void check_between(const Penalty& pen, double a, double b, double n) {
  if (!(pen.lambda > b / n && pen.lambda < a / n)) {
    throw std::domain_error("penalty lambda=" + std::to_string(pen.lambda) +
                            " is not strictly between b/n and a/n");
  }
}

// Packed 0/1 masks of community members, one row of graph words per block.
class BlockMasks {
 public:
  BlockMasks(int k, std::size_t words) : words_(words), bits_(k * words, 0) {}
  std::uint64_t* block(int c) { return bits_.data() + c * words_; }
  void set(int c, int i) { block(c)[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void clear(int c, int i) { block(c)[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  std::int64_t overlap(int c, std::span<const std::uint64_t> row) {
    const std::uint64_t* m = block(c);
    std::int64_t total = 0;
    for (std::size_t w = 0; w < words_; ++w) total += std::popcount(row[w] & m[w]);
    return total;
  }

 private:
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

struct ExhaustiveVisitor {
  const Graph& graph;
  const Penalty& penalty;
  int k;
  bool keep_ties;
  BlockMasks masks;
  std::vector<WithinBlock> saved;
  WithinBlock current;
  ExhaustiveResult result;
  bool found = false;

  ExhaustiveVisitor(const Graph& g, const Penalty& pen, int k_, bool ties)
      : graph(g), penalty(pen), k(k_), keep_ties(ties), masks(k_, g.words_per_row()),
        saved(g.n()) {}

  void place(int i, int c, int size_before) {
    saved[i] = current;
    current.edges += masks.overlap(c, graph.row(i));
    current.pairs += size_before;
    masks.set(c, i);
  }
  void unplace(int i, int c) {
    masks.clear(c, i);
    current = saved[i];
  }
  void leaf(const std::vector<int>& labels, int) {
    ++result.classes;
    const double t = objective_value(current, penalty);
    if (!found || t > result.objective) {
      found = true;
      result.objective = t;
      result.counts = current;
      result.best = Assignment::from_zero_based(labels, k);
      result.ties.clear();
      if (keep_ties) result.ties.push_back(result.best);
    } else if (keep_ties && t == result.objective) {
      result.ties.push_back(Assignment::from_zero_based(labels, k));
    }
  }
};

}  // namespace

Penalty Penalty::fixed(double lambda) {
  return {lambda, 0.5, 0.0};
}

double t_star(double a, double b, double n) {
  require_rates(a, b, n, "t_star");
  return 0.5 * (std::log1p((a - b) / b) + std::log1p((a - b) / (n - a)));
}

Penalty lambda_unified(double a, double b, double n) {
  const double ts = t_star(a, b, n);
  Penalty pen{std::log1p((a - b) / (n - a)) / (2.0 * ts), 0.5, ts};
  check_between(pen, a, b, n);
  return pen;
}

Penalty lambda_weighted(double a, double b, double n, double w, std::optional<int> k) {
  if (!(w >= 0.0 && w <= 1.0)) {
    throw std::domain_error("lambda_weighted: w must lie in [0, 1], got " + std::to_string(w));
  }
  if (k && *k == 2 && w != 0.5) {
    throw std::invalid_argument("lambda_weighted: K = 2 admits only w = 1/2");
  }
  const double ts = t_star(a, b, n);
  const double p = a / n;
  const double q = b / n;
  const double lambda =
      -(w / ts) * std::log1p(p * std::expm1(-ts)) + ((1.0 - w) / ts) * std::log1p(q * std::expm1(ts));
  Penalty pen{lambda, w, ts};
  check_between(pen, a, b, n);
  return pen;
}

WithinBlock within_block(const Graph& graph, const Assignment& sigma) {
  if (graph.n() != sigma.n()) {
    throw std::invalid_argument("within_block: graph has " + std::to_string(graph.n()) +
                                " nodes, sigma has " + std::to_string(sigma.n()));
  }
  BlockMasks masks(sigma.k(), graph.words_per_row());
  for (int i = 0; i < sigma.n(); ++i) masks.set(sigma[i] - 1, i);
  WithinBlock wb;
  for (int i = 0; i < sigma.n(); ++i) wb.edges += masks.overlap(sigma[i] - 1, graph.row(i));
  wb.edges /= 2;
  for (int s : sigma.sizes()) wb.pairs += static_cast<std::int64_t>(s) * (s - 1) / 2;
  return wb;
}

double objective(const Graph& graph, const Assignment& sigma, const Penalty& penalty) {
  return objective_value(within_block(graph, sigma), penalty);
}

ExhaustiveResult solve_exhaustive(const Graph& graph, const SizeConstraint& rule,
                                  const Penalty& penalty, ExhaustiveOptions options) {
  if (graph.n() != rule.n()) {
    throw std::invalid_argument("solve_exhaustive: graph has " + std::to_string(graph.n()) +
                                " nodes, space has n = " + std::to_string(rule.n()));
  }
  const double estimate = count_classes(rule);
  if (estimate > options.cap) throw EnumerationCapExceeded(estimate, options.cap);
  ExhaustiveVisitor visitor(graph, penalty, rule.k(), options.keep_ties);
  detail::ClassWalk<ExhaustiveVisitor>(rule, visitor).run();
  if (!visitor.found) {
    throw std::invalid_argument("solve_exhaustive: the space admits no assignment");
  }
  return std::move(visitor.result);
}

ExhaustiveResult solve_exhaustive(const Graph& graph, const ModelParams& params,
                                  const SpaceKind& kind, const Penalty& penalty,
                                  ExhaustiveOptions options) {
  return solve_exhaustive(graph, SizeConstraint::for_space(params.n, params.k, params.beta, kind),
                          penalty, options);
}

GreedyResult solve_greedy(const Graph& graph, const Assignment& init, const Penalty& penalty,
                          int max_sweeps, const SizeConstraint& rule) {
  const int n = graph.n();
  const int k = init.k();
  if (init.n() != n || rule.n() != n || rule.k() != k) {
    throw std::invalid_argument("solve_greedy: graph, init and space disagree on n or k");
  }
  std::vector<int> sizes = init.sizes();
  if (!rule.admits(sizes)) throw std::invalid_argument("solve_greedy: init is not in the space");

  std::vector<int> label(n);
  for (int i = 0; i < n; ++i) label[i] = init[i] - 1;
  // deg[i * k + c]: neighbors of i currently in block c.
  std::vector<std::int64_t> deg(static_cast<std::size_t>(n) * k, 0);
  for (int i = 0; i < n; ++i) {
    for (int j : graph.neighbors(i)) ++deg[static_cast<std::size_t>(i) * k + label[j]];
  }

  GreedyResult res;
  res.counts = within_block(graph, init);
  double current = objective_value(res.counts, penalty);

  auto admits_move = [&](int from, int to) {
    if (rule.is_interval()) {
      return sizes[from] - 1 >= rule.min_size() && sizes[to] + 1 <= rule.max_size();
    }
    --sizes[from];
    ++sizes[to];
    const bool ok = rule.admits(sizes);
    ++sizes[from];
    --sizes[to];
    return ok;
  };

  while (res.sweeps < max_sweeps) {
    ++res.sweeps;
    std::int64_t moved = 0;
    for (int i = 0; i < n; ++i) {
      const int from = label[i];
      const std::int64_t* d = deg.data() + static_cast<std::size_t>(i) * k;
      int best = -1;
      double best_t = current;
      WithinBlock best_counts;
      for (int to = 0; to < k; ++to) {
        if (to == from || !admits_move(from, to)) continue;
        const WithinBlock cand{res.counts.edges + d[to] - d[from],
                               res.counts.pairs + sizes[to] - (sizes[from] - 1)};
        const double t = objective_value(cand, penalty);
        if (t > best_t) {
          best = to;
          best_t = t;
          best_counts = cand;
        }
      }
      if (best < 0) continue;
      for (int j : graph.neighbors(i)) {
        --deg[static_cast<std::size_t>(j) * k + from];
        ++deg[static_cast<std::size_t>(j) * k + best];
      }
      --sizes[from];
      ++sizes[best];
      label[i] = best;
      res.counts = best_counts;
      current = best_t;
      ++moved;
    }
    res.moves += moved;
    if (moved == 0) {
      res.converged = true;
      break;
    }
  }
  res.assignment = Assignment::from_zero_based(label, k);
  res.objective = current;
  return res;
}

GreedyResult solve_greedy_restarts(const Graph& graph, const SizeConstraint& rule,
                                   const Penalty& penalty, int restarts, int max_sweeps, Rng& rng) {
  if (restarts < 1) throw std::invalid_argument("solve_greedy_restarts: restarts must be >= 1");
  GreedyResult best;
  for (int r = 0; r < restarts; ++r) {
    const Assignment init = sample_assignment(rule, rng);
    GreedyResult run = solve_greedy(graph, init, penalty, max_sweeps, rule);
    if (r == 0 || run.objective > best.objective) best = std::move(run);
  }
  return best;
}

}  // namespace sbm
