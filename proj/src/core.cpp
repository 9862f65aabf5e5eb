#include "sbm/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "sbm/least_favorable.hpp"

namespace sbm {

Assignment::Assignment(std::vector<Label> labels, int k)
    : labels_(std::move(labels)), k_(k) {
  if (k_ < 1) throw std::invalid_argument("Assignment: k must be >= 1");
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] < 1 || labels_[i] > k_) {
      throw std::invalid_argument("Assignment: label " + std::to_string(labels_[i]) +
                                  " at node " + std::to_string(i) +
                                  " outside [1, " + std::to_string(k_) + "]");
    }
  }
}

Assignment Assignment::from_zero_based(std::span<const int> labels, int k) {
  std::vector<Label> shifted(labels.begin(), labels.end());
  for (Label& c : shifted) ++c;
  return Assignment(std::move(shifted), k);
}

std::vector<int> Assignment::sizes() const {
  std::vector<int> out(k_, 0);
  for (Label c : labels_) ++out[c - 1];
  return out;
}

int Assignment::occupied() const {
  const auto s = sizes();
  return static_cast<int>(std::count_if(s.begin(), s.end(), [](int x) { return x > 0; }));
}

Assignment Assignment::relabeled(std::span<const Label> relabel) const {
  if (static_cast<int>(relabel.size()) != k_) {
    throw std::invalid_argument("relabeled: permutation has wrong length");
  }
  std::vector<bool> seen(k_ + 1, false);
  for (Label c : relabel) {
    if (c < 1 || c > k_ || seen[c]) {
      throw std::invalid_argument("relabeled: not a bijection of [1, k]");
    }
    seen[c] = true;
  }
  std::vector<Label> out(labels_.size());
  for (std::size_t i = 0; i < labels_.size(); ++i) out[i] = relabel[labels_[i] - 1];
  return Assignment(std::move(out), k_);
}

Assignment Assignment::permuted(std::span<const int> perm) const {
  if (perm.size() != labels_.size()) {
    throw std::invalid_argument("permuted: permutation has wrong length");
  }
  std::vector<Label> out(labels_.size());
  // sigma_pi(pi(i)) = sigma(i).
  for (std::size_t i = 0; i < labels_.size(); ++i) out[perm[i]] = labels_[i];
  return Assignment(std::move(out), k_);
}

Assignment Assignment::canonical() const {
  std::vector<Label> map(k_ + 1, 0);
  Label next = 1;
  std::vector<Label> out(labels_.size());
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    Label& m = map[labels_[i]];
    if (m == 0) m = next++;
    out[i] = m;
  }
  return Assignment(std::move(out), k_);
}

Graph::Graph(int n)
    : n_(n),
      words_(static_cast<std::size_t>((n + 63) / 64)),
      bits_(static_cast<std::size_t>(n) * words_, 0),
      neighbors_(n) {
  if (n < 0) throw std::invalid_argument("Graph: negative node count");
}

Graph Graph::from_edges(int n, std::span<const Edge> edges) {
  Graph g(n);
  for (Edge e : edges) {
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.u < 0 || e.v >= n) {
      throw std::invalid_argument("Graph: edge (" + std::to_string(e.u) + ", " +
                                  std::to_string(e.v) + ") out of range");
    }
    if (e.u == e.v) {
      throw std::invalid_argument("Graph: self-loop at node " + std::to_string(e.u));
    }
    if (g.has_edge(e.u, e.v)) {
      throw std::invalid_argument("Graph: duplicate edge (" + std::to_string(e.u) +
                                  ", " + std::to_string(e.v) + ")");
    }
    g.bits_[g.row_offset(e.u) + (e.v >> 6)] |= std::uint64_t{1} << (e.v & 63);
    g.bits_[g.row_offset(e.v) + (e.u >> 6)] |= std::uint64_t{1} << (e.u & 63);
    g.neighbors_[e.u].push_back(e.v);
    g.neighbors_[e.v].push_back(e.u);
    ++g.num_edges_;
  }
  for (auto& nb : g.neighbors_) std::sort(nb.begin(), nb.end());
  return g;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges_);
  for (int u = 0; u < n_; ++u) {
    for (int v : neighbors_[u]) {
      if (u < v) out.push_back({u, v});
    }
  }
  return out;
}

Graph Graph::permuted(std::span<const int> perm) const {
  if (static_cast<int>(perm.size()) != n_) {
    throw std::invalid_argument("Graph::permuted: permutation has wrong length");
  }
  std::vector<Edge> moved;
  moved.reserve(num_edges_);
  for (const Edge& e : edges()) moved.push_back({perm[e.u], perm[e.v]});
  return from_edges(n_, moved);
}

void ModelParams::validate() const {
  std::ostringstream err;
  if (n < 1) err << "n must be positive; ";
  if (k < 1 || k > std::max(n, 1)) err << "k must lie in [1, n]; ";
  if (!(b > 0.0 && b < a && a < n)) err << "need 0 < b < a < n; ";
  if (!(epsilon > 0.0)) err << "epsilon must be positive; ";
  if (n >= 1 && a / n > 1.0 - epsilon) err << "a/n exceeds 1 - epsilon; ";
  if (b < epsilon) err << "b is below epsilon; ";
  if (!(beta >= 1.0)) err << "beta must be >= 1; ";
  if (theta && theta->size() != static_cast<std::size_t>(n) * n) {
    err << "theta must be n x n; ";
  }
  const std::string msg = err.str();
  if (!msg.empty()) {
    throw std::invalid_argument("ModelParams: " + msg.substr(0, msg.size() - 2));
  }
}

void ModelParams::validate_theta(const Assignment& sigma) const {
  if (!theta) return;
  if (sigma.n() != n) throw std::invalid_argument("validate_theta: sigma length differs from n");
  const auto& t = *theta;
  const double pw = p_within();
  const double pb = p_between();
  for (int i = 0; i < n; ++i) {
    if (t[i * n + i] != 0.0) throw std::invalid_argument("theta: nonzero diagonal");
    for (int j = i + 1; j < n; ++j) {
      const double v = t[i * n + j];
      if (v != t[j * n + i]) throw std::invalid_argument("theta: not symmetric");
      if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("theta: entry outside [0, 1]");
      if (sigma[i] == sigma[j] ? v < pw : v > pb) {
        throw std::invalid_argument("theta: entry (" + std::to_string(i) + ", " +
                                    std::to_string(j) + ") violates the a/n, b/n ordering");
      }
    }
  }
}

double ModelParams::edge_probability(const Assignment& sigma, int i, int j) const {
  if (theta) return (*theta)[static_cast<std::size_t>(i) * n + j];
  return sigma[i] == sigma[j] ? p_within() : p_between();
}

std::string_view to_string(SpaceKind::Variant variant) {
  switch (variant) {
    case SpaceKind::Variant::general: return "general";
    case SpaceKind::Variant::homogeneous: return "homogeneous";
    case SpaceKind::Variant::equal_size: return "equal_size";
    case SpaceKind::Variant::least_favorable: return "least_favorable";
  }
  return "unknown";
}

SpaceKind::Variant parse_space_variant(std::string_view name) {
  if (name == "general") return SpaceKind::Variant::general;
  if (name == "homogeneous") return SpaceKind::Variant::homogeneous;
  if (name == "equal_size" || name == "balanced") return SpaceKind::Variant::equal_size;
  if (name == "least_favorable") return SpaceKind::Variant::least_favorable;
  throw std::invalid_argument("unknown space kind '" + std::string(name) + "'");
}

SizeConstraint SizeConstraint::interval(int n, int k, int lo, int hi) {
  SizeConstraint c;
  c.n_ = n;
  c.k_ = k;
  c.lo_ = std::max(lo, 1);
  c.hi_ = std::min(hi, n);
  return c;
}

SizeConstraint SizeConstraint::profiles(int n, int k,
                                        std::vector<std::vector<int>> profiles) {
  SizeConstraint c;
  c.n_ = n;
  c.k_ = k;
  c.lo_ = n;
  c.hi_ = 0;
  for (auto& p : profiles) {
    if (static_cast<int>(p.size()) != k || std::accumulate(p.begin(), p.end(), 0) != n) {
      throw std::invalid_argument("SizeConstraint: profile does not split n into k parts");
    }
    std::sort(p.begin(), p.end());
    c.lo_ = std::min(c.lo_, std::max(p.front(), 1));
    c.hi_ = std::max(c.hi_, p.back());
  }
  std::sort(profiles.begin(), profiles.end());
  profiles.erase(std::unique(profiles.begin(), profiles.end()), profiles.end());
  c.profiles_ = std::move(profiles);
  return c;
}

SizeConstraint SizeConstraint::for_space(int n, int k, double beta, const SpaceKind& kind) {
  constexpr double slack = 1e-9;
  const double share = static_cast<double>(n) / k;
  switch (kind.variant) {
    case SpaceKind::Variant::general:
    case SpaceKind::Variant::homogeneous: {
      if (std::isinf(beta)) return interval(n, k, 1, n);
      const int lo = static_cast<int>(std::ceil(share / beta - slack));
      const int hi = static_cast<int>(std::floor(share * beta + slack));
      return interval(n, k, lo, hi);
    }
    case SpaceKind::Variant::equal_size: {
      const int lo = static_cast<int>(std::ceil(share * (1.0 - kind.delta) - slack));
      const int hi = static_cast<int>(std::floor(share * (1.0 + kind.delta) + slack));
      return interval(n, k, lo, hi);
    }
    case SpaceKind::Variant::least_favorable: {
      if (k == 1) return interval(n, k, n, n);
      return profiles(n, k, construct_least_favorable(n, k).profiles);
    }
  }
  throw std::logic_error("unreachable");
}

bool SizeConstraint::admits(std::span<const int> sizes) const {
  if (static_cast<int>(sizes.size()) != k_) return false;
  if (std::accumulate(sizes.begin(), sizes.end(), 0) != n_) return false;
  if (is_interval()) {
    return std::all_of(sizes.begin(), sizes.end(),
                       [&](int s) { return s >= lo_ && s <= hi_; });
  }
  std::vector<int> sorted(sizes.begin(), sizes.end());
  std::sort(sorted.begin(), sorted.end());
  return std::binary_search(profiles_.begin(), profiles_.end(), sorted);
}

bool SizeConstraint::feasible() const {
  if (!is_interval()) return !profiles_.empty();
  return lo_ <= hi_ && static_cast<long long>(lo_) * k_ <= n_ &&
         static_cast<long long>(hi_) * k_ >= n_;
}

MembershipReport check_membership(const Assignment& sigma, const ModelParams& params,
                                  const SpaceKind& kind) {
  if (sigma.n() != params.n) {
    throw std::invalid_argument("check_membership: sigma has " + std::to_string(sigma.n()) +
                                " nodes, params.n = " + std::to_string(params.n));
  }
  if (sigma.k() != params.k) {
    throw std::invalid_argument("check_membership: sigma has k = " + std::to_string(sigma.k()) +
                                ", params.k = " + std::to_string(params.k));
  }
  MembershipReport report;
  const auto sizes = sigma.sizes();
  const SizeConstraint rule = SizeConstraint::for_space(params.n, params.k, params.beta, kind);
  auto fail = [&](std::string msg) {
    report.member = false;
    report.violations.push_back(std::move(msg));
  };

  if (rule.is_interval()) {
    for (int c = 1; c <= params.k; ++c) {
      const int s = sizes[c - 1];
      if (s < rule.min_size()) {
        fail("n_" + std::to_string(c) + " = " + std::to_string(s) + " < " +
             std::to_string(rule.min_size()));
      } else if (s > rule.max_size()) {
        fail("n_" + std::to_string(c) + " = " + std::to_string(s) + " > " +
             std::to_string(rule.max_size()));
      }
    }
  } else if (!rule.admits(sizes)) {
    std::string got;
    std::vector<int> sorted = sizes;
    std::sort(sorted.begin(), sorted.end());
    for (int s : sorted) got += (got.empty() ? "" : ",") + std::to_string(s);
    fail("size profile {" + got + "} is not a least-favorable profile");
  }
  return report;
}

double renyi_divergence(double a, double b, double n) {
  if (!(n > 0.0) || !(a >= 0.0 && a <= n) || !(b >= 0.0 && b <= n)) {
    throw std::domain_error("renyi_divergence: need 0 <= a, b <= n");
  }
  const double p = a / n;
  const double q = b / n;
  const double d = p - q;
  if (d == 0.0) return 0.0;
  // 1 - BC = ((sqrt p - sqrt q)^2 + (sqrt(1-p) - sqrt(1-q))^2) / 2, with each
  // difference rewritten as d / (sum of roots).
  const double s1 = std::sqrt(p) + std::sqrt(q);
  const double s2 = std::sqrt(1.0 - p) + std::sqrt(1.0 - q);
  double h2 = 0.0;
  if (s1 > 0.0) h2 += (d / s1) * (d / s1);
  if (s2 > 0.0) h2 += (d / s2) * (d / s2);
  h2 *= 0.5;
  if (h2 >= 1.0) {
    throw std::domain_error("renyi_divergence: Bhattacharyya coefficient is zero (a = n, b = 0)");
  }
  return -2.0 * std::log1p(-h2);
}

}  // namespace sbm
