#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "json.hpp"

#include "sbm/core.hpp"
#include "sbm/estimator.hpp"

namespace sbm {

// JSON renderings shared by the command-line tool and its tests. Labels in
// arrays are 0-based, matching the file formats.

// {"n", "K", "distance", "r_num", "r_den", "r", "relabel"}
nlohmann::ordered_json loss_report(const Assignment& sigma, const Assignment& sigma_hat);

// {"node", "local_num", "local_den", "local"}
nlohmann::ordered_json local_loss_report(const Assignment& sigma, const Assignment& sigma_hat,
                                         int node);

struct EstimateSummary {
  std::string_view solver;
  Assignment assignment;
  double objective = 0.0;
  WithinBlock counts;
  Penalty penalty;
  // Classes visited (exhaustive) or greedy sweeps/moves.
  std::optional<std::uint64_t> classes;
  std::optional<int> sweeps;
  std::optional<std::int64_t> moves;
};

EstimateSummary summarize_estimate(const ExhaustiveResult& result, const Penalty& penalty);
EstimateSummary summarize_estimate(const GreedyResult& result, const Penalty& penalty);

// {"solver", "n", "K", "lambda", "objective", "within_edges",
//  "within_pairs", ["classes"], ["sweeps", "moves"], "assignment",
//  ["r_num", "r_den", "r" when truth is given]}
nlohmann::ordered_json estimate_report(const EstimateSummary& estimate,
                                       const std::optional<Assignment>& truth = std::nullopt);

}  // namespace sbm
