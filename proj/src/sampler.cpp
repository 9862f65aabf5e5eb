#include "sbm/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "size_table.hpp"

namespace sbm {
namespace {

Assignment fill_by_sizes(const std::vector<int>& sizes, int n, int k, Rng& rng) {
  std::vector<Label> labels;
  labels.reserve(n);
  for (int c = 0; c < k; ++c) labels.insert(labels.end(), sizes[c], c + 1);
  rng.shuffle(std::span<Label>(labels));
  return Assignment(std::move(labels), k);
}

std::vector<int> draw_interval_sizes(const SizeConstraint& rule, Rng& rng) {
  const detail::IntervalTable table(rule);
  std::vector<int> sizes(rule.k());
  int remaining = rule.n();
  for (int j = 0; j < rule.k(); ++j) {
    const double total = table.log_ways(j, remaining);
    const double u = rng.uniform();
    double cum = 0.0;
    int chosen = -1;
    for (int s = table.lo(); s <= table.hi() && s <= remaining; ++s) {
      const double rest = table.log_ways(j + 1, remaining - s);
      if (std::isinf(rest)) continue;
      chosen = s;
      cum += std::exp(detail::log_choose(remaining, s) + rest - total);
      if (u < cum) break;
    }
    sizes[j] = chosen;
    remaining -= chosen;
  }
  return sizes;
}

std::vector<int> draw_profile_sizes(const SizeConstraint& rule, Rng& rng) {
  const auto& profiles = rule.allowed_profiles();
  std::vector<double> logw;
  double total = -std::numeric_limits<double>::infinity();
  for (const auto& p : profiles) {
    logw.push_back(detail::log_multinomial(rule.n(), p) + detail::log_arrangements(p));
    total = detail::log_add(total, logw.back());
  }
  const double u = rng.uniform();
  double cum = 0.0;
  std::size_t pick = profiles.size() - 1;
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    cum += std::exp(logw[i] - total);
    if (u < cum) {
      pick = i;
      break;
    }
  }
  std::vector<int> sizes = profiles[pick];
  rng.shuffle(std::span<int>(sizes));
  return sizes;
}

}  // namespace

Graph sample_graph(const Assignment& sigma, const ModelParams& params, Rng& rng,
                   SampleOptions options) {
  if (!options.skip_validation) params.validate();
  if (sigma.n() != params.n) {
    throw std::invalid_argument("sample_graph: sigma length differs from params.n");
  }
  if (params.theta) params.validate_theta(sigma);
  const int n = params.n;
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng.bernoulli(params.edge_probability(sigma, i, j))) edges.push_back({i, j});
    }
  }
  return Graph::from_edges(n, edges);
}

Assignment sample_assignment(const SizeConstraint& rule, Rng& rng) {
  if (!rule.feasible() || std::isinf(detail::log_labelled_count(rule))) {
    throw std::invalid_argument("sample_assignment: the space admits no size profile for n=" +
                                std::to_string(rule.n()) + ", k=" + std::to_string(rule.k()));
  }
  const auto sizes =
      rule.is_interval() ? draw_interval_sizes(rule, rng) : draw_profile_sizes(rule, rng);
  return fill_by_sizes(sizes, rule.n(), rule.k(), rng);
}

Assignment sample_assignment(const ModelParams& params, const SpaceKind& kind, Rng& rng) {
  if (params.n < 1 || params.k < 1 || params.k > params.n) {
    throw std::invalid_argument("sample_assignment: need 1 <= k <= n");
  }
  return sample_assignment(SizeConstraint::for_space(params.n, params.k, params.beta, kind), rng);
}

double log_space_size(const SizeConstraint& rule) {
  return detail::log_labelled_count(rule);
}

}  // namespace sbm
