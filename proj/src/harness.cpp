#include "sbm/harness.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <thread>

#include "sbm/bounds.hpp"
#include "sbm/rng.hpp"
#include "sbm/sampler.hpp"

namespace sbm {
namespace {

using json = nlohmann::json;

bool is_degenerate(const GridPoint& p) {
  return p.a == p.n && p.b == 0.0;
}

ModelParams params_of(const GridPoint& p, const ExperimentConfig& config) {
  ModelParams params;
  params.n = p.n;
  params.k = p.k;
  params.a = p.a;
  params.b = p.b;
  params.beta = p.beta;
  params.epsilon = config.epsilon;
  return params;
}

double divergence_or_inf(const GridPoint& p) {
  if (is_degenerate(p)) return std::numeric_limits<double>::infinity();
  return renyi_divergence(p.a, p.b, p.n);
}

std::vector<double> number_list(const json& j, const char* key) {
  const json& v = j.at(key);
  if (v.is_array()) return v.get<std::vector<double>>();
  return {v.get<double>()};
}

int as_int(double x, const char* what) {
  if (x != std::floor(x)) throw std::invalid_argument(std::string("config: ") + what + " must be an integer");
  return static_cast<int>(x);
}

std::vector<GridPoint> parse_grid(const json& g) {
  std::vector<GridPoint> grid;
  if (g.is_array()) {
    for (const auto& e : g) {
      GridPoint p;
      p.n = e.at("n").get<int>();
      p.k = e.at("K").get<int>();
      p.a = e.at("a").get<double>();
      p.b = e.at("b").get<double>();
      p.beta = e.value("beta", 1.0);
      grid.push_back(p);
    }
    return grid;
  }
  if (!g.is_object()) throw std::invalid_argument("config: grid must be a list or an object");
  const auto ns = number_list(g, "n");
  const auto ks = number_list(g, "K");
  const auto as = number_list(g, "a");
  const auto bs = number_list(g, "b");
  const auto betas = g.contains("beta") ? number_list(g, "beta") : std::vector<double>{1.0};
  for (double n : ns)
    for (double k : ks)
      for (double a : as)
        for (double b : bs)
          for (double beta : betas) grid.push_back({as_int(n, "n"), as_int(k, "K"), a, b, beta});
  return grid;
}

template <typename Parse>
void read_kind(const json& j, const char* key, Parse parse) {
  if (!j.contains(key)) return;
  const json& v = j.at(key);
  if (v.is_string()) {
    parse(v.get<std::string>(), json::object());
  } else {
    parse(v.at("kind").get<std::string>(), v);
  }
}

}  // namespace

std::string_view to_string(EstimatorKind kind) {
  return kind == EstimatorKind::exhaustive ? "exhaustive" : "greedy";
}

std::string_view to_string(PenaltyKind kind) {
  return kind == PenaltyKind::unified ? "unified" : "weighted";
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void ExperimentConfig::validate() const {
  if (grid.empty()) throw std::invalid_argument("config: grid is empty");
  if (replicates < 1) throw std::invalid_argument("config: replicates must be >= 1");
  if (restarts < 1) throw std::invalid_argument("config: restarts must be >= 1");
  if (max_sweeps < 1) throw std::invalid_argument("config: max_sweeps must be >= 1");
  if (!(w >= 0.0 && w <= 1.0)) throw std::invalid_argument("config: w must lie in [0, 1]");
  if (!(enumeration_cap > 0.0)) throw std::invalid_argument("config: enumeration_cap must be > 0");
  if (!(space.delta >= 0.0)) throw std::invalid_argument("config: delta must be >= 0");
  for (const GridPoint& p : grid) {
    const std::string where = "config: point n=" + std::to_string(p.n) + " K=" +
                              std::to_string(p.k) + " a=" + format_double(p.a) +
                              " b=" + format_double(p.b) + ": ";
    if (p.k < 1 || p.k > p.n) throw std::invalid_argument(where + "need 1 <= K <= n");
    if (!(p.beta >= 1.0)) throw std::invalid_argument(where + "need beta >= 1");
    if (allow_degenerate && is_degenerate(p)) continue;
    try {
      params_of(p, *this).validate();
      if (penalty == PenaltyKind::weighted) lambda_weighted(p.a, p.b, p.n, w, p.k);
    } catch (const std::exception& e) {
      throw std::invalid_argument(where + e.what());
    }
  }
}

ExperimentConfig parse_config(const json& j) {
  ExperimentConfig c;
  c.grid = parse_grid(j.at("grid"));
  read_kind(j, "space", [&](const std::string& kind, const json& v) {
    c.space.variant = parse_space_variant(kind);
    c.space.delta = v.value("delta", c.space.variant == SpaceKind::Variant::least_favorable ? 0.0 : 0.1);
  });
  read_kind(j, "estimator", [&](const std::string& kind, const json& v) {
    if (kind == "exhaustive") {
      c.estimator = EstimatorKind::exhaustive;
    } else if (kind == "greedy") {
      c.estimator = EstimatorKind::greedy;
    } else {
      throw std::invalid_argument("config: unknown estimator '" + kind + "'");
    }
    c.restarts = v.value("restarts", c.restarts);
    c.max_sweeps = v.value("max_sweeps", c.max_sweeps);
  });
  read_kind(j, "penalty", [&](const std::string& kind, const json& v) {
    if (kind == "unified") {
      c.penalty = PenaltyKind::unified;
    } else if (kind == "weighted") {
      c.penalty = PenaltyKind::weighted;
    } else {
      throw std::invalid_argument("config: unknown penalty '" + kind + "'");
    }
    c.w = v.value("w", 0.5);
  });
  c.replicates = j.value("replicates", c.replicates);
  c.master_seed = j.value("master_seed", c.master_seed);
  c.output = j.value("output", std::string());
  c.summary = j.value("summary", std::string());
  c.enumeration_cap = j.value("enumeration_cap", c.enumeration_cap);
  c.epsilon = j.value("epsilon", c.epsilon);
  c.allow_degenerate = j.value("allow_degenerate", false);
  c.record_timing = j.value("record_timing", false);
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw std::runtime_error("config " + path.string() + ": " + e.what());
  }
  ExperimentConfig c;
  try {
    c = parse_config(j);
  } catch (const json::exception& e) {
    throw std::invalid_argument("config " + path.string() + ": " + e.what());
  }
  const auto base = path.parent_path();
  for (std::string* out : {&c.output, &c.summary}) {
    if (!out->empty() && std::filesystem::path(*out).is_relative()) {
      *out = (base / *out).string();
    }
  }
  return c;
}

nlohmann::ordered_json to_json(const ExperimentConfig& c) {
  nlohmann::ordered_json j;
  auto& grid = j["grid"] = nlohmann::ordered_json::array();
  for (const auto& p : c.grid) {
    grid.push_back({{"n", p.n}, {"K", p.k}, {"a", p.a}, {"b", p.b}, {"beta", p.beta}});
  }
  j["space"] = {{"kind", to_string(c.space.variant)}, {"delta", c.space.delta}};
  j["estimator"] = {{"kind", to_string(c.estimator)},
                    {"restarts", c.restarts},
                    {"max_sweeps", c.max_sweeps}};
  j["penalty"] = {{"kind", to_string(c.penalty)}, {"w", c.w}};
  j["replicates"] = c.replicates;
  j["master_seed"] = c.master_seed;
  j["enumeration_cap"] = c.enumeration_cap;
  j["epsilon"] = c.epsilon;
  j["allow_degenerate"] = c.allow_degenerate;
  j["record_timing"] = c.record_timing;
  return j;
}

std::uint64_t point_hash(const GridPoint& p) {
  const std::string key = std::to_string(p.n) + "," + std::to_string(p.k) + "," +
                          format_double(p.a) + "," + format_double(p.b) + "," +
                          format_double(p.beta);
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : key) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint64_t replicate_seed(std::uint64_t master, const GridPoint& point, int replicate) {
  return derive_stream_seed(derive_stream_seed(master, point_hash(point)),
                            static_cast<std::uint64_t>(replicate));
}

Penalty point_penalty(const GridPoint& p, const ExperimentConfig& config) {
  if (is_degenerate(p)) return Penalty::fixed(0.5 * (p.a + p.b) / p.n);
  if (config.penalty == PenaltyKind::weighted) return lambda_weighted(p.a, p.b, p.n, config.w, p.k);
  return lambda_unified(p.a, p.b, p.n);
}

RiskRecord run_replicate(const GridPoint& point, int replicate, const ExperimentConfig& config) {
  RiskRecord rec;
  rec.point = point;
  rec.space = to_string(config.space.variant);
  rec.estimator = to_string(config.estimator);
  rec.penalty = to_string(config.penalty);
  rec.w = config.penalty == PenaltyKind::weighted ? config.w : 0.5;
  rec.replicate = replicate;
  rec.seed = replicate_seed(config.master_seed, point, replicate);
  try {
    const double I = divergence_or_inf(point);
    rec.nI_over_K = point.n * I / point.k;
    rec.nI_over_betaK = rec.nI_over_K / point.beta;

    const auto start = std::chrono::steady_clock::now();
    const ModelParams params = params_of(point, config);
    const SizeConstraint rule =
        SizeConstraint::for_space(point.n, point.k, point.beta, config.space);
    const Penalty pen = point_penalty(point, config);
    Rng rng(rec.seed);
    const Assignment sigma0 = sample_assignment(rule, rng);
    const Graph graph = sample_graph(sigma0, params, rng, {is_degenerate(point)});
    Assignment estimate;
    if (config.estimator == EstimatorKind::exhaustive) {
      estimate = solve_exhaustive(graph, rule, pen, {config.enumeration_cap, false}).best;
    } else {
      estimate =
          solve_greedy_restarts(graph, rule, pen, config.restarts, config.max_sweeps, rng).assignment;
    }
    rec.r = mismatch_ratio(sigma0, estimate);
    if (config.record_timing) {
      rec.runtime_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - start)
                           .count();
    }
  } catch (const EnumerationCapExceeded&) {
    rec.status = "cap_exceeded";
  } catch (const std::exception&) {
    rec.status = "error";
  }
  return rec;
}

PointSummary summarize(const GridPoint& point, const std::vector<RiskRecord>& records,
                       const ExperimentConfig& config) {
  PointSummary s;
  s.point = point;
  const double I = divergence_or_inf(point);
  s.nI_over_K = point.n * I / point.k;
  s.nI_over_betaK = s.nI_over_K / point.beta;
  Rational sum(0);
  std::vector<double> values;
  for (const RiskRecord& rec : records) {
    ++s.replicates;
    if (!rec.r) {
      ++s.failed;
      continue;
    }
    ++s.ok;
    sum += *rec.r;
    values.push_back(to_double(*rec.r));
  }
  if (s.ok > 0) {
    s.mean_r = sum / Rational(s.ok);
    if (s.ok > 1) {
      const double mean = to_double(*s.mean_r);
      double ss = 0.0;
      for (double v : values) ss += (v - mean) * (v - mean);
      s.stderr_r = std::sqrt(ss / (s.ok - 1) / s.ok);
    }
  }
  s.bounds = nullptr;
  if (!is_degenerate(point)) {
    try {
      BoundRequest req;
      req.n = point.n;
      req.k = point.k;
      req.a = point.a;
      req.b = point.b;
      req.beta = point.beta;
      req.w = config.penalty == PenaltyKind::weighted ? config.w : 0.5;
      if (point.n > 1) s.bounds = to_json(bound_report(req));
    } catch (const std::exception&) {
      s.bounds = nullptr;
    }
  }
  return s;
}

nlohmann::ordered_json to_json(const PointSummary& s) {
  nlohmann::ordered_json j;
  j["n"] = s.point.n;
  j["K"] = s.point.k;
  j["a"] = s.point.a;
  j["b"] = s.point.b;
  j["beta"] = s.point.beta;
  j["replicates"] = s.replicates;
  j["ok"] = s.ok;
  j["failed"] = s.failed;
  if (s.mean_r) {
    const double mean = to_double(*s.mean_r);
    j["mean_r_num"] = s.mean_r->numerator();
    j["mean_r_den"] = s.mean_r->denominator();
    j["mean_r"] = mean;
    j["stderr_r"] = s.stderr_r ? nlohmann::ordered_json(*s.stderr_r) : nullptr;
    const bool positive = mean > 0.0;
    j["log_mean_r"] = positive ? nlohmann::ordered_json(std::log(mean)) : nullptr;
    const bool finite = std::isfinite(s.nI_over_K) && s.nI_over_K > 0.0;
    j["rate_ratio"] =
        positive && finite ? nlohmann::ordered_json(-std::log(mean) / s.nI_over_K) : nullptr;
  } else {
    for (const char* key : {"mean_r_num", "mean_r_den", "mean_r", "stderr_r", "log_mean_r", "rate_ratio"}) {
      j[key] = nullptr;
    }
  }
  j["nI_over_K"] = s.nI_over_K;
  j["nI_over_betaK"] = s.nI_over_betaK;
  j["bounds"] = s.bounds;
  return j;
}

void write_csv_row(std::ostream& out, const RiskRecord& rec) {
  out << rec.point.n << ',' << rec.point.k << ',' << format_double(rec.point.a) << ','
      << format_double(rec.point.b) << ',' << format_double(rec.point.beta) << ',' << rec.space
      << ',' << rec.estimator << ',' << rec.penalty << ',' << format_double(rec.w) << ','
      << rec.replicate << ',' << rec.seed << ',';
  if (rec.r) {
    out << rec.r->numerator() << ',' << rec.r->denominator() << ',' << format_double(to_double(*rec.r));
  } else {
    out << ",,";
  }
  out << ',' << format_double(rec.nI_over_K) << ',' << format_double(rec.nI_over_betaK) << ',';
  if (rec.runtime_ms) out << format_double(*rec.runtime_ms);
  out << ',' << rec.status << '\n';
}

void write_csv(std::ostream& out, const std::vector<RiskRecord>& records) {
  out << kCsvHeader << '\n';
  for (const auto& rec : records) write_csv_row(out, rec);
}

nlohmann::ordered_json summary_json(const ExperimentConfig& config, const SweepResult& result) {
  nlohmann::ordered_json j;
  j["config"] = to_json(config);
  auto& points = j["points"] = nlohmann::ordered_json::array();
  for (const auto& s : result.summaries) points.push_back(to_json(s));
  j["point_failed"] = result.point_failed;
  return j;
}

SweepResult sweep(const ExperimentConfig& config, int threads) {
  config.validate();
  const std::size_t reps = static_cast<std::size_t>(config.replicates);
  const std::size_t total = config.grid.size() * reps;
  SweepResult result;
  result.records.resize(total);

  if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = static_cast<int>(std::min<std::size_t>(threads, total));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t t = next++; t < total; t = next++) {
      result.records[t] = run_replicate(config.grid[t / reps], static_cast<int>(t % reps), config);
    }
  };
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(work);
  }

  for (std::size_t p = 0; p < config.grid.size(); ++p) {
    const std::vector<RiskRecord> slice(result.records.begin() + p * reps,
                                        result.records.begin() + (p + 1) * reps);
    result.summaries.push_back(summarize(config.grid[p], slice, config));
    if (result.summaries.back().ok == 0) result.point_failed = true;
  }

  if (!config.output.empty()) {
    std::ofstream out(config.output, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + config.output);
    write_csv(out, result.records);
  }
  if (!config.summary.empty()) {
    std::ofstream out(config.summary, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + config.summary);
    out << summary_json(config, result).dump(2) << '\n';
  }
  return result;
}

}  // namespace sbm
