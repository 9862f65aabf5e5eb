#include "cli.hpp"

#include <algorithm>
#include <ostream>

#include "CLI11.hpp"
#include "sbm/bounds.hpp"
#include "sbm/harness.hpp"
#include "sbm/io.hpp"
#include "sbm/report.hpp"
#include "sbm/sampler.hpp"

namespace sbm::cli {
namespace {

struct SampleArgs {
  int n = 0;
  int k = 2;
  double a = 0.0;
  double b = 0.0;
  double beta = 1.0;
  double epsilon = 0.01;
  std::string space = "general";
  double delta = 0.1;
  std::uint64_t seed = 1;
  std::string graph_out;
  std::string sigma_out;
  bool allow_degenerate = false;
};

struct EstimateArgs {
  std::string graph;
  int k = 2;
  double a = 0.0;
  double b = 0.0;
  double beta = 1.0;
  std::optional<double> w;
  double epsilon = 0.01;
  std::string space = "general";
  double delta = 0.1;
  std::string solver = "exhaustive";
  int restarts = 10;
  int max_sweeps = 50;
  std::uint64_t seed = 1;
  double cap = kDefaultEnumerationCap;
  std::string truth;
  std::string sigma_out;
};

struct LossArgs {
  std::string sigma;
  std::string sigma_hat;
  std::optional<int> local;
};

struct BoundsArgs {
  BoundRequest req;
  std::optional<int> n_prime;
};

struct SweepArgs {
  std::string config;
  int threads = 1;
  std::string output;
  std::string summary;
};

SpaceKind make_space(const std::string& name, double delta) {
  SpaceKind kind;
  kind.variant = parse_space_variant(name);
  kind.delta = delta;
  return kind;
}

int do_sample(const SampleArgs& s, std::ostream&) {
  ModelParams params;
  params.n = s.n;
  params.k = s.k;
  params.a = s.a;
  params.b = s.b;
  params.beta = s.beta;
  params.epsilon = s.epsilon;
  const bool degenerate = s.allow_degenerate && s.a == s.n && s.b == 0.0;
  if (!degenerate) params.validate();
  Rng rng(s.seed);
  const Assignment sigma = sample_assignment(params, make_space(s.space, s.delta), rng);
  const Graph graph = sample_graph(sigma, params, rng, {degenerate});
  save_graph(s.graph_out, graph);
  save_assignment(s.sigma_out, sigma);
  return 0;
}

int do_estimate(const EstimateArgs& e, std::ostream& out) {
  const Graph graph = load_graph(e.graph);
  ModelParams params;
  params.n = graph.n();
  params.k = e.k;
  params.a = e.a;
  params.b = e.b;
  params.beta = e.beta;
  params.epsilon = e.epsilon;
  params.validate();
  if (e.k < 1 || e.k > graph.n()) throw std::invalid_argument("need 1 <= k <= n");
  const Penalty pen = e.w ? lambda_weighted(e.a, e.b, graph.n(), *e.w, e.k)
                          : lambda_unified(e.a, e.b, graph.n());
  const SizeConstraint rule =
      SizeConstraint::for_space(graph.n(), e.k, e.beta, make_space(e.space, e.delta));

  std::optional<Assignment> truth;
  if (!e.truth.empty()) truth = load_assignment(e.truth);

  EstimateSummary summary;
  if (e.solver == "exhaustive") {
    summary = summarize_estimate(solve_exhaustive(graph, rule, pen, {e.cap, false}), pen);
  } else {
    Rng rng(e.seed);
    summary = summarize_estimate(
        solve_greedy_restarts(graph, rule, pen, e.restarts, e.max_sweeps, rng), pen);
  }
  if (!e.sigma_out.empty()) save_assignment(e.sigma_out, summary.assignment);
  out << estimate_report(summary, truth).dump(2) << '\n';
  return 0;
}

int do_loss(const LossArgs& l, std::ostream& out) {
  const Assignment sigma = load_assignment(l.sigma);
  const Assignment sigma_hat = load_assignment(l.sigma_hat);
  if (l.local) {
    out << local_loss_report(sigma, sigma_hat, *l.local).dump(2) << '\n';
  } else {
    out << loss_report(sigma, sigma_hat).dump(2) << '\n';
  }
  return 0;
}

int do_bounds(BoundsArgs b, std::ostream& out) {
  b.req.n_prime = b.n_prime;
  out << to_json(bound_report(b.req)).dump(2) << '\n';
  return 0;
}

int do_sweep(const SweepArgs& s, std::ostream& out, std::ostream& err) {
  ExperimentConfig config = load_config(s.config);
  if (!s.output.empty()) config.output = s.output;
  if (!s.summary.empty()) config.summary = s.summary;
  const SweepResult result = sweep(config, s.threads);
  out << summary_json(config, result).dump(2) << '\n';
  if (result.point_failed) {
    err << "error: at least one grid point has no successful replicate\n";
    return 2;
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stochastic block model sampling, estimation, losses and bounds", "sbm"};
  app.require_subcommand(1);

  SampleArgs sa;
  auto* sample = app.add_subcommand("sample", "Draw an assignment and a graph");
  sample->add_option("--n", sa.n, "Node count")->required();
  sample->add_option("--k", sa.k, "Community count")->required();
  sample->add_option("--a", sa.a, "Within rate numerator (probability a/n)")->required();
  sample->add_option("--b", sa.b, "Between rate numerator (probability b/n)")->required();
  sample->add_option("--beta", sa.beta, "Size imbalance factor")->capture_default_str();
  sample->add_option("--epsilon", sa.epsilon, "Rate margin")->capture_default_str();
  sample->add_option("--space", sa.space, "general|homogeneous|equal_size|least_favorable")
      ->capture_default_str();
  sample->add_option("--delta", sa.delta, "Slack of equal_size")->capture_default_str();
  sample->add_option("--seed", sa.seed, "Random seed")->required();
  sample->add_option("--graph-out", sa.graph_out, "Graph file to write")->required();
  sample->add_option("--sigma-out", sa.sigma_out, "Assignment file to write")->required();
  sample->add_flag("--allow-degenerate", sa.allow_degenerate, "Permit a = n, b = 0");

  EstimateArgs ea;
  auto* estimate = app.add_subcommand("estimate", "Maximize the penalized likelihood");
  estimate->add_option("--graph", ea.graph, "Graph file")->required();
  estimate->add_option("--k", ea.k, "Community count")->required();
  estimate->add_option("--a", ea.a, "Within rate numerator")->required();
  estimate->add_option("--b", ea.b, "Between rate numerator")->required();
  estimate->add_option("--beta", ea.beta, "Size imbalance factor")->capture_default_str();
  estimate->add_option("--w", ea.w, "Weight of the weighted penalty (default: unified)");
  estimate->add_option("--epsilon", ea.epsilon, "Rate margin")->capture_default_str();
  estimate->add_option("--space", ea.space, "Parameter space")->capture_default_str();
  estimate->add_option("--delta", ea.delta, "Slack of equal_size")->capture_default_str();
  estimate->add_option("--solver", ea.solver, "exhaustive|greedy")
      ->check(CLI::IsMember({"exhaustive", "greedy"}))
      ->capture_default_str();
  estimate->add_option("--restarts", ea.restarts, "Greedy restarts")->capture_default_str();
  estimate->add_option("--max-sweeps", ea.max_sweeps, "Greedy sweep limit")->capture_default_str();
  estimate->add_option("--seed", ea.seed, "Seed of the greedy starts")->capture_default_str();
  estimate->add_option("--cap", ea.cap, "Enumeration cap (classes)")->capture_default_str();
  estimate->add_option("--truth", ea.truth, "Assignment file; adds r to the output");
  estimate->add_option("--sigma-out", ea.sigma_out, "Write the estimate to this file");

  LossArgs la;
  auto* loss = app.add_subcommand("loss", "Mis-match ratio or local loss");
  loss->add_option("--sigma", la.sigma, "Reference assignment file")->required();
  loss->add_option("--sigma-hat", la.sigma_hat, "Estimated assignment file")->required();
  loss->add_option("--local", la.local, "0-based node for the local loss");

  BoundsArgs ba;
  auto* bounds = app.add_subcommand("bounds", "Print the bound report as JSON");
  bounds->add_option("--n", ba.req.n, "Node count")->required();
  bounds->add_option("--k", ba.req.k, "Community count")->required();
  bounds->add_option("--a", ba.req.a, "Within rate numerator")->required();
  bounds->add_option("--b", ba.req.b, "Between rate numerator")->required();
  bounds->add_option("--beta", ba.req.beta, "Size imbalance factor")->capture_default_str();
  bounds->add_option("--w", ba.req.w, "Penalty weight")->capture_default_str();
  bounds->add_option("--m", ba.req.m, "Distance m")->capture_default_str();
  bounds->add_option("--nprime", ba.n_prime, "Tail length n' (default floor(n/K))");

  SweepArgs wa;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a Monte Carlo sweep");
  sweep_cmd->add_option("--config", wa.config, "Config JSON")->required();
  sweep_cmd->add_option("--threads", wa.threads, "Worker threads (0: all cores)")
      ->capture_default_str();
  sweep_cmd->add_option("--output", wa.output, "Override the CSV path");
  sweep_cmd->add_option("--summary", wa.summary, "Override the summary path");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*sample) return do_sample(sa, out);
    if (*estimate) return do_estimate(ea, out);
    if (*loss) return do_loss(la, out);
    if (*bounds) return do_bounds(ba, out);
    if (*sweep_cmd) return do_sweep(wa, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace sbm::cli
