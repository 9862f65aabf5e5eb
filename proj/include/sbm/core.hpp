#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sbm {

// Community labels are 1-based, as in the model definition. File formats use
// 0-based labels; the conversion happens in io.cpp only.
using Label = int;

class Assignment {
 public:
  Assignment() = default;
  // Throws std::invalid_argument unless k >= 1 and every label is in [1, k].
  Assignment(std::vector<Label> labels, int k);

  // Builds from 0-based labels.
  static Assignment from_zero_based(std::span<const int> labels, int k);

  int n() const { return static_cast<int>(labels_.size()); }
  int k() const { return k_; }
  std::span<const Label> labels() const { return labels_; }
  Label operator[](std::size_t i) const { return labels_[i]; }

  // sizes()[c - 1] is the size of community c.
  std::vector<int> sizes() const;
  // Number of communities with at least one node.
  int occupied() const;

  // delta o sigma, with relabel[c - 1] = delta(c). relabel must be a
  // bijection of [1, k].
  Assignment relabeled(std::span<const Label> relabel) const;
  // sigma_pi(i) = sigma(pi^{-1}(i)); perm is a 0-based node permutation.
  Assignment permuted(std::span<const int> perm) const;
  // Labels renumbered by first occurrence.
  Assignment canonical() const;

  friend bool operator==(const Assignment&, const Assignment&) = default;
  friend auto operator<=>(const Assignment& x, const Assignment& y) {
    return x.labels_ <=> y.labels_;
  }

 private:
  std::vector<Label> labels_;
  int k_ = 1;
};

struct Edge {
  int u = 0;
  int v = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Simple undirected graph on nodes 0..n-1. Keeps a dense bit matrix (for
// constant-time lookups and popcount intersections) and sorted neighbor lists.
class Graph {
 public:
  explicit Graph(int n = 0);
  // Edges are normalized to u < v. Throws std::invalid_argument on a
  // self-loop, an out-of-range endpoint or a duplicate edge.
  static Graph from_edges(int n, std::span<const Edge> edges);

  int n() const { return n_; }
  std::size_t num_edges() const { return num_edges_; }
  bool has_edge(int i, int j) const {
    return (bits_[row_offset(i) + (j >> 6)] >> (j & 63)) & 1u;
  }
  std::span<const int> neighbors(int i) const { return neighbors_[i]; }
  // Adjacency row of node i as packed 64-bit words.
  std::span<const std::uint64_t> row(int i) const {
    return {bits_.data() + row_offset(i), words_};
  }
  std::size_t words_per_row() const { return words_; }
  // Sorted, u < v.
  std::vector<Edge> edges() const;
  // (A_pi)_{i,j} = A_{pi^{-1}(i), pi^{-1}(j)}.
  Graph permuted(std::span<const int> perm) const;

  friend bool operator==(const Graph& x, const Graph& y) {
    return x.n_ == y.n_ && x.bits_ == y.bits_;
  }

 private:
  std::size_t row_offset(int i) const {
    return static_cast<std::size_t>(i) * words_;
  }

  int n_ = 0;
  std::size_t words_ = 0;
  std::size_t num_edges_ = 0;
  std::vector<std::uint64_t> bits_;
  std::vector<std::vector<int>> neighbors_;
};

// Parameters of the block model. Edge probabilities are a/n within and b/n
// between communities; theta, when present, is a row-major n x n matrix of
// per-pair probabilities for inhomogeneous models.
struct ModelParams {
  int n = 0;
  int k = 2;
  double a = 0.0;
  double b = 0.0;
  double beta = 1.0;
  double epsilon = 0.01;
  std::optional<std::vector<double>> theta;

  double p_within() const { return a / n; }
  double p_between() const { return b / n; }

  // Checks 0 < b < a < n, a/n <= 1 - epsilon, b >= epsilon, beta >= 1, and the
  // shape of theta. Throws std::invalid_argument.
  void validate() const;
  // Checks theta against sigma: zero diagonal, symmetry, entries in [0, 1],
  // >= a/n within and <= b/n between communities.
  void validate_theta(const Assignment& sigma) const;
  // Probability of edge (i, j) given sigma.
  double edge_probability(const Assignment& sigma, int i, int j) const;
};

struct SpaceKind {
  enum class Variant { general, homogeneous, equal_size, least_favorable };

  Variant variant = Variant::general;
  // Relative size slack for equal_size: |n_k - n/K| <= delta * n/K.
  double delta = 0.1;

  static SpaceKind general() { return {Variant::general, 0.1}; }
  static SpaceKind homogeneous() { return {Variant::homogeneous, 0.1}; }
  static SpaceKind equal_size(double delta = 0.1) {
    return {Variant::equal_size, delta};
  }
  static SpaceKind least_favorable() {
    return {Variant::least_favorable, 0.0};
  }
};

std::string_view to_string(SpaceKind::Variant variant);
// Accepts "general", "homogeneous", "equal_size", "least_favorable".
SpaceKind::Variant parse_space_variant(std::string_view name);

// Community-size rule of a parameter space: either every size lies in
// [lo, hi], or the sorted size vector is one of a fixed list of profiles.
// Every community is required to be nonempty.
class SizeConstraint {
 public:
  static SizeConstraint interval(int n, int k, int lo, int hi);
  // Each profile is a size vector of length k summing to n; order is ignored.
  static SizeConstraint profiles(int n, int k,
                                 std::vector<std::vector<int>> profiles);
  // Size rule of `kind` for (n, k, beta). Interval bounds are computed with
  // an absolute slack of 1e-9 before rounding.
  static SizeConstraint for_space(int n, int k, double beta,
                                  const SpaceKind& kind);

  int n() const { return n_; }
  int k() const { return k_; }
  int min_size() const { return lo_; }
  int max_size() const { return hi_; }
  bool is_interval() const { return profiles_.empty(); }
  // Sorted ascending.
  const std::vector<std::vector<int>>& allowed_profiles() const {
    return profiles_;
  }

  bool admits(std::span<const int> sizes) const;
  // Whether at least one size vector is admitted.
  bool feasible() const;

 private:
  int n_ = 0;
  int k_ = 1;
  int lo_ = 1;
  int hi_ = 0;
  std::vector<std::vector<int>> profiles_;
};

struct MembershipReport {
  bool member = true;
  std::vector<std::string> violations;
  explicit operator bool() const { return member; }
};

// Size constraints of `kind` for sigma. Throws std::invalid_argument when
// sigma's length or label count disagrees with params.
MembershipReport check_membership(const Assignment& sigma,
                                  const ModelParams& params,
                                  const SpaceKind& kind);

// Renyi divergence of order 1/2 between Ber(a/n) and Ber(b/n):
//   I = -2 log( sqrt(a b)/n + sqrt((1 - a/n)(1 - b/n)) ).
// Evaluated through the squared Hellinger distance so that I is exactly 0
// at a == b and keeps full relative precision when a and b are close.
// Throws std::domain_error outside 0 <= a, b <= n or when the log argument
// vanishes (a = n, b = 0).
double renyi_divergence(double a, double b, double n);

}  // namespace sbm
