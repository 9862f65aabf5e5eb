#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "sbm/core.hpp"
#include "sbm/estimator.hpp"
#include "sbm/loss.hpp"

namespace sbm {

struct GridPoint {
  int n = 0;
  int k = 2;
  double a = 0.0;
  double b = 0.0;
  double beta = 1.0;
};

enum class EstimatorKind { exhaustive, greedy };
enum class PenaltyKind { unified, weighted };

std::string_view to_string(EstimatorKind kind);
std::string_view to_string(PenaltyKind kind);

// Config file (JSON):
//   {
//     "grid": [{"n": 16, "K": 2, "a": 9.5, "b": 2, "beta": 1}, ...]
//          or {"n": [...], "K": [...], "a": [...], "b": [...], "beta": [...]}
//          (cartesian product, n slowest, beta fastest; beta defaults to [1]),
//     "space": "equal_size" or {"kind": "equal_size", "delta": 0.0},
//     "estimator": "exhaustive" or {"kind": "greedy", "restarts": 10,
//                                   "max_sweeps": 50},
//     "penalty": "unified" or {"kind": "weighted", "w": 0.5},
//     "replicates": 100,
//     "master_seed": 1,
//     "output": "results.csv",         optional
//     "summary": "summary.json",       optional
//     "enumeration_cap": 1e7,          optional
//     "epsilon": 0.01,                 optional
//     "allow_degenerate": false,       optional, permits a = n, b = 0
//     "record_timing": false           optional, fills runtime_ms
//   }
// Relative output paths are resolved against the config file's directory
// by load_config.
struct ExperimentConfig {
  std::vector<GridPoint> grid;
  SpaceKind space = SpaceKind::general();
  EstimatorKind estimator = EstimatorKind::exhaustive;
  int restarts = 10;
  int max_sweeps = 50;
  PenaltyKind penalty = PenaltyKind::unified;
  double w = 0.5;
  int replicates = 1;
  std::uint64_t master_seed = 1;
  std::string output;
  std::string summary;
  double enumeration_cap = kDefaultEnumerationCap;
  double epsilon = 0.01;
  bool allow_degenerate = false;
  bool record_timing = false;

  // Throws std::invalid_argument naming the first problem found.
  void validate() const;
};

ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& path);
nlohmann::ordered_json to_json(const ExperimentConfig& config);

struct RiskRecord {
  GridPoint point;
  std::string space;
  std::string estimator;
  std::string penalty;
  double w = 0.5;
  int replicate = 0;
  std::uint64_t seed = 0;
  std::optional<Rational> r;
  double nI_over_K = 0.0;
  double nI_over_betaK = 0.0;
  std::optional<double> runtime_ms;
  // "ok", "cap_exceeded", or "error"
  std::string status = "ok";
};

// FNV-1a hash of the point's shortest decimal rendering "n,K,a,b,beta".
std::uint64_t point_hash(const GridPoint& point);
// derive_stream_seed(derive_stream_seed(master, point_hash(point)), replicate)
std::uint64_t replicate_seed(std::uint64_t master, const GridPoint& point, int replicate);

// Penalty used at `point` under `config`. In degenerate mode (a = n, b = 0)
// this is the midpoint (a/n + b/n)/2.
Penalty point_penalty(const GridPoint& point, const ExperimentConfig& config);

// Draws sigma0 from the configured space, a graph at sigma0, runs the
// estimator and scores it. Estimator failures become records with a non-ok
// status and no r.
RiskRecord run_replicate(const GridPoint& point, int replicate, const ExperimentConfig& config);

struct PointSummary {
  GridPoint point;
  int replicates = 0;
  int ok = 0;
  int failed = 0;
  std::optional<Rational> mean_r;
  std::optional<double> stderr_r;
  double nI_over_K = 0.0;
  double nI_over_betaK = 0.0;
  nlohmann::ordered_json bounds;  // BoundReport, null when unavailable
};

PointSummary summarize(const GridPoint& point, const std::vector<RiskRecord>& records,
                       const ExperimentConfig& config);
nlohmann::ordered_json to_json(const PointSummary& summary);

struct SweepResult {
  std::vector<RiskRecord> records;  // (point, replicate) order
  std::vector<PointSummary> summaries;
  // Some point has no successful replicate.
  bool point_failed = false;
};

// Runs every (point, replicate) on `threads` workers. Results do not depend
// on the worker count. Writes config.output / config.summary when set.
SweepResult sweep(const ExperimentConfig& config, int threads = 1);

inline constexpr const char* kCsvHeader =
    "n,K,a,b,beta,space,estimator,penalty,w,replicate,seed,r_num,r_den,r,nI_over_K,"
    "nI_over_betaK,runtime_ms,status";

void write_csv_row(std::ostream& out, const RiskRecord& record);
void write_csv(std::ostream& out, const std::vector<RiskRecord>& records);
nlohmann::ordered_json summary_json(const ExperimentConfig& config, const SweepResult& result);

// Shortest round-trip decimal rendering; "inf", "-inf", "nan" for
// non-finite values.
std::string format_double(double x);

}  // namespace sbm
