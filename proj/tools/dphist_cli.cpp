#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dphist/experiments.hpp"
#include "dphist/histogram.hpp"
#include "dphist/io.hpp"
#include "dphist/isotonic.hpp"
#include "dphist/mechanism.hpp"
#include "dphist/oracle.hpp"
#include "dphist/tree.hpp"
#include "dphist/tree_inference.hpp"

namespace {

using namespace dphist;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitVerification = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Range parse_range(const std::string& spec) {
  size_t colon = spec.find(':');
  if (colon == std::string::npos) throw UsageError("range must be lo:hi, got " + spec);
  try {
    return Range{std::stol(spec.substr(0, colon)), std::stol(spec.substr(colon + 1))};
  } catch (const std::exception&) {
    throw UsageError("range must be lo:hi, got " + spec);
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

int cmd_privatize(const std::string& input, const std::string& output,
                  const std::string& strategy_name, int k, double epsilon,
                  std::uint64_t seed, std::string ledger_path) {
  Histogram h = read_histogram_csv(input);
  Strategy strategy = Strategy::from_name(strategy_name, k);

  std::vector<double> truth;
  std::optional<TreeLayout> layout;
  switch (strategy.kind) {
    case StrategyKind::Unit:
      truth.assign(h.counts().begin(), h.counts().end());
      break;
    case StrategyKind::Sorted: {
      SortedCounts s = sorted_sequence(h);
      truth.assign(s.values.begin(), s.values.end());
      break;
    }
    case StrategyKind::Hierarchical: {
      TreeVector tree = hierarchical_sequence(h, k);
      layout = tree.layout;
      truth = tree.values;
      break;
    }
  }

  if (ledger_path.empty()) ledger_path = output + ".ledger.json";
  BudgetLedger ledger = read_ledger(ledger_path);
  PrivacyParams params{epsilon, seed};
  NoisyVector released =
      privatize(truth, strategy, params, layout ? &*layout : nullptr, ledger);
  write_release(output, ReleaseFile{std::move(released), false});
  write_ledger(ledger_path, ledger);
  return kExitOk;
}

int cmd_infer(const std::string& input, const std::string& output) {
  ReleaseFile release = read_release(input);
  switch (release.data.strategy.kind) {
    case StrategyKind::Unit:
      throw UsageError("unit-count releases have no constraints to exploit");
    case StrategyKind::Sorted: {
      std::vector<Count> bar = round_sorted(isotonic_pava(release.data.values));
      release.data.values.assign(bar.begin(), bar.end());
      break;
    }
    case StrategyKind::Hierarchical: {
      TreeVector noisy{*release.data.layout, release.data.values};
      release.data.values = round_consistent(constrained_inference(noisy)).values;
      break;
    }
  }
  release.inferred = true;
  write_release(output, release);
  return kExitOk;
}

int cmd_query(const std::string& input, const std::vector<std::string>& range_specs) {
  ReleaseFile release = read_release(input);
  if (release.data.strategy.kind == StrategyKind::Sorted) {
    throw UsageError("sorted releases carry no bucket attribution; ranges undefined");
  }
  std::cout.precision(17);
  for (const std::string& spec : range_specs) {
    Range q = parse_range(spec);
    double answer = 0.0;
    if (release.data.strategy.kind == StrategyKind::Hierarchical) {
      TreeVector tree{*release.data.layout, release.data.values};
      RangeMode mode = release.inferred ? RangeMode::LeafSum : RangeMode::CoverSum;
      try {
        answer = answer_range(tree, q, mode);
      } catch (const std::out_of_range& e) {
        throw UsageError(e.what());
      }
    } else {
      long n = static_cast<long>(release.data.values.size());
      if (q.lo < 1 || q.lo > q.hi || q.hi > n) throw UsageError("range out of bounds");
      for (long i = q.lo; i <= q.hi; ++i) answer += release.data.values[i - 1];
    }
    std::cout << answer << '\n';
  }
  return kExitOk;
}

struct SynthSpec {
  std::string kind = "powerlaw";
  long n = 1 << 14;
  double alpha = 2.0;
  long xmax = 1000;
  double density = 0.05;
  double scale = 50.0;
  long distinct = 4;
  long gap = 100;
};

Histogram make_dataset(const std::string& input, const SynthSpec& synth, std::uint64_t seed,
                       std::string& label) {
  if (!input.empty()) {
    label = "file:" + input;
    return read_histogram_csv(input);
  }
  if (synth.kind == "powerlaw") {
    label = "powerlaw(n=" + std::to_string(synth.n) + ",alpha=" + std::to_string(synth.alpha) + ")";
    return synth_powerlaw(synth.n, synth.alpha, synth.xmax, seed ^ 0xda7a5e7ULL);
  }
  if (synth.kind == "sparse") {
    label = "sparse(n=" + std::to_string(synth.n) + ",density=" + std::to_string(synth.density) + ")";
    return synth_sparse(synth.n, synth.density, synth.scale, seed ^ 0xda7a5e7ULL);
  }
  if (synth.kind == "runs") {
    label = "runs(n=" + std::to_string(synth.n) + ",d=" + std::to_string(synth.distinct) + ")";
    return synth_uniform_runs(synth.n, synth.distinct, synth.gap);
  }
  throw UsageError("unknown synthetic dataset: " + synth.kind);
}

int cmd_evaluate(const std::string& experiment, const std::string& input,
                 const SynthSpec& synth, ExperimentConfig cfg, int height,
                 const std::string& format, const std::string& output) {
  if (experiment == "worstcase") {
    TreeLayout layout(cfg.branching, height);
    WorstCaseResult r = worstcase_query_experiment(layout, cfg.epsilons.at(0), cfg.trials,
                                                   cfg.seed);
    nlohmann::json j = {{"mse_inferred", r.mse_inferred}, {"mse_cover", r.mse_cover},
                        {"se_inferred", r.se_inferred},   {"se_cover", r.se_cover},
                        {"ratio", r.ratio}};
    write_text(output, j.dump(2) + "\n");
    return kExitOk;
  }

  Histogram h = make_dataset(input, synth, cfg.seed, cfg.dataset);
  ExperimentReport report;
  if (experiment == "unattributed") {
    report = run_unattributed_experiment(h, cfg);
  } else if (experiment == "range") {
    report = run_range_experiment(h, cfg);
  } else {
    throw UsageError("unknown experiment: " + experiment);
  }
  write_text(output, format == "csv" ? report.to_csv() : report.to_json() + "\n");
  return kExitOk;
}

int cmd_verify(int instances, std::uint64_t seed) {
  VerifyReport report = verify_random_instances(instances, seed);
  std::printf("instances:          %d\n", report.instances);
  std::printf("isotonic deviation: %.3e (tolerance %.0e)\n", report.max_isotonic_deviation,
              report.isotonic_tolerance);
  std::printf("tree deviation:     %.3e (tolerance %.0e)\n", report.max_tree_deviation,
              report.tree_tolerance);
  std::printf("%s\n", report.ok() ? "PASS" : "FAIL");
  return report.ok() ? kExitOk : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differentially private histogram release with constrained inference"};
  app.require_subcommand(1);

  std::string input, output, ledger_path, strategy = "l";
  std::string experiment = "range", format = "json";
  std::vector<std::string> range_specs;
  double epsilon = 1.0;
  std::uint64_t seed = 0;
  int k = 2, trials = 50, ranges = 1000, instances = 100, height = 16;
  std::vector<double> epsilons;
  SynthSpec synth;

  CLI::App* privatize_cmd = app.add_subcommand("privatize", "Release a noisy query answer");
  privatize_cmd->add_option("input", input, "count CSV")->required();
  privatize_cmd->add_option("--out", output, "release path")->required();
  privatize_cmd->add_option("--strategy", strategy, "l, s or h")
      ->check(CLI::IsMember({"l", "s", "h"}));
  privatize_cmd->add_option("--k", k, "branching factor for h");
  privatize_cmd->add_option("--epsilon", epsilon, "privacy budget")
      ->check(CLI::PositiveNumber);
  privatize_cmd->add_option("--seed", seed, "noise seed");
  privatize_cmd->add_option("--ledger", ledger_path, "budget ledger JSON");

  CLI::App* infer_cmd = app.add_subcommand("infer", "Constrained inference on a release");
  infer_cmd->add_option("input", input, "release path")->required();
  infer_cmd->add_option("--out", output, "inferred release path")->required();

  CLI::App* query_cmd = app.add_subcommand("query", "Answer range queries from a release");
  query_cmd->add_option("input", input, "release path")->required();
  query_cmd->add_option("--range", range_specs, "lo:hi (repeatable)")->required();

  CLI::App* evaluate_cmd = app.add_subcommand("evaluate", "Run an error-comparison experiment");
  evaluate_cmd->add_option("--experiment", experiment, "unattributed, range or worstcase")
      ->check(CLI::IsMember({"unattributed", "range", "worstcase"}));
  evaluate_cmd->add_option("--input", input, "count CSV (else synthetic)");
  evaluate_cmd->add_option("--synth", synth.kind, "powerlaw, sparse or runs");
  evaluate_cmd->add_option("--n", synth.n, "synthetic domain size");
  evaluate_cmd->add_option("--alpha", synth.alpha, "power-law exponent");
  evaluate_cmd->add_option("--xmax", synth.xmax, "power-law count cap");
  evaluate_cmd->add_option("--density", synth.density, "sparse nonzero fraction");
  evaluate_cmd->add_option("--scale", synth.scale, "sparse count scale");
  evaluate_cmd->add_option("--distinct", synth.distinct, "runs: distinct values");
  evaluate_cmd->add_option("--gap", synth.gap, "runs: level gap");
  evaluate_cmd->add_option("--epsilon", epsilons, "privacy budgets (repeatable)");
  evaluate_cmd->add_option("--trials", trials, "noise draws per cell");
  evaluate_cmd->add_option("--ranges", ranges, "ranges per trial and size");
  evaluate_cmd->add_option("--k", k, "branching factor");
  evaluate_cmd->add_option("--height", height, "tree height (worstcase)");
  evaluate_cmd->add_option("--seed", seed, "experiment seed");
  evaluate_cmd->add_option("--format", format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  evaluate_cmd->add_option("--out", output, "report path (default stdout)");

  CLI::App* verify_cmd = app.add_subcommand("verify", "Cross-check solvers against oracles");
  verify_cmd->add_option("--instances", instances, "random instances");
  verify_cmd->add_option("--seed", seed, "instance seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (privatize_cmd->parsed()) {
      return cmd_privatize(input, output, strategy, k, epsilon, seed, ledger_path);
    }
    if (infer_cmd->parsed()) return cmd_infer(input, output);
    if (query_cmd->parsed()) return cmd_query(input, range_specs);
    if (evaluate_cmd->parsed()) {
      ExperimentConfig cfg;
      if (!epsilons.empty()) cfg.epsilons = epsilons;
      cfg.trials = trials;
      cfg.ranges_per_trial = ranges;
      cfg.seed = seed;
      cfg.branching = k;
      return cmd_evaluate(experiment, input, synth, cfg, height, format, output);
    }
    if (verify_cmd->parsed()) return cmd_verify(instances, seed);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
