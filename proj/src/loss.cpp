#include "sbm/loss.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace sbm {
namespace {

void require_comparable(const Assignment& x, const Assignment& y, const char* who) {
  if (x.n() != y.n()) {
    throw std::invalid_argument(std::string(who) + ": assignments have lengths " +
                                std::to_string(x.n()) + " and " + std::to_string(y.n()));
  }
  if (x.k() != y.k()) {
    throw std::invalid_argument(std::string(who) + ": assignments have different K");
  }
}

std::vector<Label> identity_relabel(int k) {
  std::vector<Label> perm(k);
  std::iota(perm.begin(), perm.end(), 1);
  return perm;
}

}  // namespace

Confusion::Confusion(const Assignment& sigma, const Assignment& sigma_hat)
    : k_(sigma.k()), n_(sigma.n()), counts_(static_cast<std::size_t>(k_) * k_, 0) {
  require_comparable(sigma, sigma_hat, "Confusion");
  for (int i = 0; i < n_; ++i) {
    ++counts_[static_cast<std::size_t>(sigma_hat[i] - 1) * k_ + (sigma[i] - 1)];
  }
}

std::int64_t Confusion::agreement(std::span<const Label> relabel) const {
  std::int64_t total = 0;
  for (int c = 1; c <= k_; ++c) total += at(c, relabel[c - 1]);
  return total;
}

int hamming(const Assignment& x, const Assignment& y) {
  if (x.n() != y.n()) {
    throw std::invalid_argument("hamming: assignments have lengths " + std::to_string(x.n()) +
                                " and " + std::to_string(y.n()));
  }
  int d = 0;
  for (int i = 0; i < x.n(); ++i) d += x[i] != y[i];
  return d;
}

ClassDistance class_distance_enumerated(const Assignment& sigma1, const Assignment& sigma2) {
  require_comparable(sigma1, sigma2, "class_distance");
  if (sigma1.k() > kMaxEnumeratedK) {
    throw std::length_error("class_distance_enumerated: K > " + std::to_string(kMaxEnumeratedK));
  }
  const Confusion conf(sigma1, sigma2);
  std::vector<Label> perm = identity_relabel(sigma1.k());
  ClassDistance best{sigma1.n() + 1, perm};
  do {
    const int d = sigma1.n() - static_cast<int>(conf.agreement(perm));
    if (d < best.distance) best = {d, perm};
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

ClassDistance class_distance_matching(const Assignment& sigma1, const Assignment& sigma2) {
  require_comparable(sigma1, sigma2, "class_distance");
  const int k = sigma1.k();
  const Confusion conf(sigma1, sigma2);
  std::vector<std::int64_t> weight(static_cast<std::size_t>(k) * k);
  for (int r = 1; r <= k; ++r) {
    for (int c = 1; c <= k; ++c) weight[static_cast<std::size_t>(r - 1) * k + (c - 1)] = conf.at(r, c);
  }
  const auto match = detail::max_weight_assignment(weight, k);
  std::vector<Label> relabel(k);
  for (int r = 0; r < k; ++r) relabel[r] = match[r] + 1;
  return {sigma1.n() - static_cast<int>(conf.agreement(relabel)), relabel};
}

ClassDistance class_distance(const Assignment& sigma1, const Assignment& sigma2) {
  if (sigma1.k() <= kMaxEnumeratedK) return class_distance_enumerated(sigma1, sigma2);
  return class_distance_matching(sigma1, sigma2);
}

Rational mismatch_ratio(const Assignment& sigma, const Assignment& sigma_hat) {
  if (sigma.n() == 0) return Rational(0);
  return Rational(class_distance(sigma, sigma_hat).distance, sigma.n());
}

std::vector<Rational> local_losses(const Assignment& sigma, const Assignment& sigma_hat) {
  require_comparable(sigma, sigma_hat, "local_loss");
  const int k = sigma.k();
  if (k > kMaxEnumeratedK) {
    throw std::length_error("local_loss: K = " + std::to_string(k) +
                            " exceeds the enumeration limit " + std::to_string(kMaxEnumeratedK));
  }
  const int n = sigma.n();
  const Confusion conf(sigma, sigma_hat);
  const auto sizes = sigma_hat.sizes();

  std::int64_t best = -1;
  std::set<std::vector<Label>> minimizers;  // relabel restricted to used labels
  std::vector<Label> perm = identity_relabel(k);
  do {
    const std::int64_t agree = conf.agreement(perm);
    if (agree < best) continue;
    if (agree > best) {
      best = agree;
      minimizers.clear();
    }
    std::vector<Label> key(k, 0);
    for (int c = 1; c <= k; ++c) {
      if (sizes[c - 1] > 0) key[c - 1] = perm[c - 1];
    }
    minimizers.insert(std::move(key));
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<std::int64_t> wrong(n, 0);
  for (const auto& relabel : minimizers) {
    for (int i = 0; i < n; ++i) wrong[i] += relabel[sigma_hat[i] - 1] != sigma[i];
  }
  const auto count = static_cast<std::int64_t>(minimizers.size());
  std::vector<Rational> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.emplace_back(wrong[i], count);
  return out;
}

Rational local_loss(const Assignment& sigma, const Assignment& sigma_hat, int i) {
  if (i < 0 || i >= sigma.n()) throw std::out_of_range("local_loss: node index out of range");
  return local_losses(sigma, sigma_hat)[i];
}

AlphaGamma alpha_gamma(const Assignment& sigma, const Assignment& sigma0) {
  if (sigma.n() != sigma0.n()) throw std::invalid_argument("alpha_gamma: length mismatch");
  AlphaGamma out;
  const int n = sigma.n();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const bool together0 = sigma0[i] == sigma0[j];
      const bool together = sigma[i] == sigma[j];
      out.alpha += together0 && !together;
      out.gamma += !together0 && together;
    }
  }
  return out;
}

}  // namespace sbm
