#include "sbm/report.hpp"

#include "sbm/loss.hpp"

namespace sbm {
namespace {

nlohmann::ordered_json zero_based(std::span<const Label> labels) {
  auto arr = nlohmann::ordered_json::array();
  for (Label c : labels) arr.push_back(c - 1);
  return arr;
}

}  // namespace

nlohmann::ordered_json loss_report(const Assignment& sigma, const Assignment& sigma_hat) {
  const ClassDistance cd = class_distance(sigma, sigma_hat);
  const Rational r = mismatch_ratio(sigma, sigma_hat);
  nlohmann::ordered_json j;
  j["n"] = sigma.n();
  j["K"] = sigma.k();
  j["distance"] = cd.distance;
  j["r_num"] = r.numerator();
  j["r_den"] = r.denominator();
  j["r"] = to_double(r);
  j["relabel"] = zero_based(cd.relabel);
  return j;
}

nlohmann::ordered_json local_loss_report(const Assignment& sigma, const Assignment& sigma_hat,
                                         int node) {
  const Rational v = local_loss(sigma, sigma_hat, node);
  nlohmann::ordered_json j;
  j["node"] = node;
  j["local_num"] = v.numerator();
  j["local_den"] = v.denominator();
  j["local"] = to_double(v);
  return j;
}

EstimateSummary summarize_estimate(const ExhaustiveResult& result, const Penalty& penalty) {
  EstimateSummary s;
  s.solver = "exhaustive";
  s.assignment = result.best;
  s.objective = result.objective;
  s.counts = result.counts;
  s.penalty = penalty;
  s.classes = result.classes;
  return s;
}

EstimateSummary summarize_estimate(const GreedyResult& result, const Penalty& penalty) {
  EstimateSummary s;
  s.solver = "greedy";
  s.assignment = result.assignment;
  s.objective = result.objective;
  s.counts = result.counts;
  s.penalty = penalty;
  s.sweeps = result.sweeps;
  s.moves = result.moves;
  return s;
}

nlohmann::ordered_json estimate_report(const EstimateSummary& e,
                                       const std::optional<Assignment>& truth) {
  nlohmann::ordered_json j;
  j["solver"] = e.solver;
  j["n"] = e.assignment.n();
  j["K"] = e.assignment.k();
  j["lambda"] = e.penalty.lambda;
  j["objective"] = e.objective;
  j["within_edges"] = e.counts.edges;
  j["within_pairs"] = e.counts.pairs;
  if (e.classes) j["classes"] = *e.classes;
  if (e.sweeps) j["sweeps"] = *e.sweeps;
  if (e.moves) j["moves"] = *e.moves;
  j["assignment"] = zero_based(e.assignment.labels());
  if (truth) {
    const Rational r = mismatch_ratio(*truth, e.assignment);
    j["r_num"] = r.numerator();
    j["r_den"] = r.denominator();
    j["r"] = to_double(r);
  }
  return j;
}

}  // namespace sbm
