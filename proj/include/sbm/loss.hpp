#pragma once

#include <cstdint>
#include <vector>

#include <boost/rational.hpp>

#include "sbm/core.hpp"

namespace sbm {

// Exact losses are kept as reduced fractions; doubles appear only when
// results are reported.
using Rational = boost::rational<std::int64_t>;

inline double to_double(const Rational& r) {
  return boost::rational_cast<double>(r);
}

// K x K contingency table between an estimate and a reference assignment:
// at(k, k2) = |{i : sigma_hat(i) = k, sigma(i) = k2}|.
class Confusion {
 public:
  Confusion(const Assignment& sigma, const Assignment& sigma_hat);

  int k() const { return k_; }
  int n() const { return n_; }
  std::int64_t at(Label k_hat, Label k_ref) const {
    return counts_[static_cast<std::size_t>(k_hat - 1) * k_ + (k_ref - 1)];
  }
  // Number of agreements after relabeling sigma_hat by relabel
  // (relabel[c - 1] = delta(c)).
  std::int64_t agreement(std::span<const Label> relabel) const;

 private:
  int k_;
  int n_;
  std::vector<std::int64_t> counts_;
};

// Number of positions where the two assignments differ. Throws
// std::invalid_argument on a length mismatch.
int hamming(const Assignment& x, const Assignment& y);

struct ClassDistance {
  int distance = 0;
  // A minimizing relabeling of the second argument: relabel[c - 1] = delta(c).
  std::vector<Label> relabel;
};

// Above this K, class_distance switches from enumerating all K! relabelings
// to an optimal assignment on the confusion matrix.
inline constexpr int kMaxEnumeratedK = 8;

// min over relabelings delta of d_H(sigma1, delta o sigma2). Requires equal
// lengths and equal K.
ClassDistance class_distance(const Assignment& sigma1, const Assignment& sigma2);
// Exhaustive over K! relabelings; the lexicographically first minimizer is
// returned. Throws std::length_error for K > kMaxEnumeratedK.
ClassDistance class_distance_enumerated(const Assignment& sigma1, const Assignment& sigma2);
// Hungarian method on the confusion matrix, any K.
ClassDistance class_distance_matching(const Assignment& sigma1, const Assignment& sigma2);

// class_distance / n.
Rational mismatch_ratio(const Assignment& sigma, const Assignment& sigma_hat);

// Loss at node i (0-based): the fraction of Hamming-minimizing relabelings
// sigma' = delta o sigma_hat (counted as distinct assignments) with
// sigma'(i) != sigma(i). Requires K <= kMaxEnumeratedK; throws
// std::length_error otherwise.
Rational local_loss(const Assignment& sigma, const Assignment& sigma_hat, int i);
// local_loss for every node, sharing one enumeration of the minimizers.
std::vector<Rational> local_losses(const Assignment& sigma, const Assignment& sigma_hat);

struct AlphaGamma {
  std::int64_t alpha = 0;  // pairs together in sigma0, split in sigma
  std::int64_t gamma = 0;  // pairs split in sigma0, together in sigma
  friend bool operator==(const AlphaGamma&, const AlphaGamma&) = default;
};

AlphaGamma alpha_gamma(const Assignment& sigma, const Assignment& sigma0);

namespace detail {
// Maximum-weight perfect matching on a square row-major weight matrix;
// returns assignment[row] = column.
std::vector<int> max_weight_assignment(const std::vector<std::int64_t>& weight, int size);
}  // namespace detail

}  // namespace sbm
