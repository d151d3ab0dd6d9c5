#include "dphist/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "dphist/isotonic.hpp"
#include "dphist/tree_inference.hpp"

namespace dphist {

namespace {

// Running mean / standard error over per-sample statistics.
struct Accumulator {
  double sum = 0.0;
  double sumsq = 0.0;
  long n = 0;

  void add(double x) {
    sum += x;
    sumsq += x * x;
    ++n;
  }
  double mean() const { return sum / double(n); }
  double std_error() const {
    if (n < 2) return 0.0;
    double var = (sumsq - sum * sum / double(n)) / double(n - 1);
    return std::sqrt(std::max(var, 0.0) / double(n));
  }
  ReportCell cell(double epsilon, std::string estimator, long range_size) const {
    return {epsilon, std::move(estimator), range_size, mean(), std_error(), n};
  }
};

std::vector<double> laplace_vector(const std::vector<double>& truth, double scale, Rng& rng) {
  std::vector<double> out;
  out.reserve(truth.size());
  for (double t : truth) out.push_back(t + laplace_sample(scale, rng));
  return out;
}

double sum_sq_dev(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

std::vector<double> prefix_sums(const std::vector<double>& v) {
  std::vector<double> p(v.size() + 1, 0.0);
  for (size_t i = 0; i < v.size(); ++i) p[i + 1] = p[i] + v[i];
  return p;
}

}  // namespace

const ReportCell& ExperimentReport::cell(double epsilon, const std::string& estimator,
                                         long range_size) const {
  for (const ReportCell& c : cells) {
    if (c.epsilon == epsilon && c.estimator == estimator && c.range_size == range_size) {
      return c;
    }
  }
  throw std::out_of_range("no such report cell: " + estimator);
}

std::string ExperimentReport::to_csv() const {
  std::ostringstream out;
  out.precision(12);
  out << "epsilon,estimator,range_size,mse,stderr,samples\n";
  for (const ReportCell& c : cells) {
    out << c.epsilon << ',' << c.estimator << ',' << c.range_size << ',' << c.mse << ','
        << c.std_error << ',' << c.samples << '\n';
  }
  return out.str();
}

std::string ExperimentReport::to_json() const {
  nlohmann::json j;
  j["name"] = name;
  j["dataset"] = dataset;
  j["seed"] = seed;
  if (distinct_values > 0) {
    j["distinct_values"] = distinct_values;
    j["multiplicities"] = multiplicities;
  }
  j["cells"] = nlohmann::json::array();
  for (const ReportCell& c : cells) {
    j["cells"].push_back({{"epsilon", c.epsilon},
                          {"estimator", c.estimator},
                          {"range_size", c.range_size},
                          {"mse", c.mse},
                          {"stderr", c.std_error},
                          {"samples", c.samples}});
  }
  return j.dump(2);
}

double mse(const std::vector<std::vector<double>>& samples, const std::vector<double>& truth) {
  if (samples.empty()) throw std::invalid_argument("mse needs at least one sample");
  double total = 0.0;
  for (const std::vector<double>& s : samples) {
    if (s.size() != truth.size()) throw std::invalid_argument("mse length mismatch");
    total += sum_sq_dev(s, truth);
  }
  return total / double(samples.size());
}

ExperimentReport run_unattributed_experiment(const Histogram& h, const ExperimentConfig& cfg) {
  ExperimentReport report;
  report.name = "unattributed";
  report.dataset = cfg.dataset;
  report.seed = cfg.seed;

  SortedCounts sorted = sorted_sequence(h);
  std::vector<double> truth(sorted.values.begin(), sorted.values.end());

  report.multiplicities.clear();
  for (size_t i = 0; i < sorted.values.size(); ++i) {
    if (i == 0 || sorted.values[i] != sorted.values[i - 1]) {
      report.multiplicities.push_back(1);
    } else {
      report.multiplicities.back()++;
    }
  }
  report.distinct_values = static_cast<long>(report.multiplicities.size());

  Rng root(cfg.seed);
  for (size_t ei = 0; ei < cfg.epsilons.size(); ++ei) {
    double eps = cfg.epsilons[ei];
    Accumulator noisy_acc, round_acc, inferred_acc;
    for (int t = 0; t < cfg.trials; ++t) {
      Rng rng = root.split(ei * 0x10000ULL + static_cast<std::uint64_t>(t));
      std::vector<double> noisy = laplace_vector(truth, 1.0 / eps, rng);
      noisy_acc.add(sum_sq_dev(noisy, truth));

      std::vector<Count> rounded = sort_round_baseline(noisy);
      std::vector<double> rounded_d(rounded.begin(), rounded.end());
      round_acc.add(sum_sq_dev(rounded_d, truth));

      inferred_acc.add(sum_sq_dev(isotonic_pava(noisy).values, truth));
    }
    report.cells.push_back(noisy_acc.cell(eps, "s_noisy", 0));
    report.cells.push_back(round_acc.cell(eps, "s_round", 0));
    report.cells.push_back(inferred_acc.cell(eps, "s_inferred", 0));
  }
  return report;
}

ExperimentReport run_range_experiment(const Histogram& h, const ExperimentConfig& cfg) {
  ExperimentReport report;
  report.name = "range";
  report.dataset = cfg.dataset;
  report.seed = cfg.seed;

  TreeVector truth_tree = hierarchical_sequence(h, cfg.branching);
  const TreeLayout& layout = truth_tree.layout;
  long n = layout.n_leaves();
  int height = layout.height();
  std::vector<double> truth_prefix = prefix_sums(tree_leaves(truth_tree, n));
  std::vector<double> unit_truth = tree_leaves(truth_tree, n);

  std::vector<long> sizes;
  for (int i = 1; i <= height - 2; ++i) sizes.push_back(1L << i);
  if (sizes.empty()) sizes.push_back(1);

  Rng root(cfg.seed);
  for (size_t ei = 0; ei < cfg.epsilons.size(); ++ei) {
    double eps = cfg.epsilons[ei];
    std::vector<Accumulator> unit_acc(sizes.size()), cover_acc(sizes.size()),
        inferred_acc(sizes.size());
    for (int t = 0; t < cfg.trials; ++t) {
      Rng rng = root.split(ei * 0x100000ULL + static_cast<std::uint64_t>(t));
      std::vector<double> noisy_units = laplace_vector(unit_truth, 1.0 / eps, rng);
      TreeVector noisy_tree{layout, laplace_vector(truth_tree.values, height / eps, rng)};
      TreeVector released = round_consistent(constrained_inference(noisy_tree));

      std::vector<double> unit_prefix = prefix_sums(noisy_units);
      std::vector<double> released_prefix = prefix_sums(tree_leaves(released, n));

      for (size_t si = 0; si < sizes.size(); ++si) {
        long size = sizes[si];
        long span = n - size + 1;
        for (int r = 0; r < cfg.ranges_per_trial; ++r) {
          long lo = 1 + static_cast<long>(rng.next_u64() % static_cast<std::uint64_t>(span));
          long hi = lo + size - 1;
          double exact = truth_prefix[hi] - truth_prefix[lo - 1];

          double unit_est = unit_prefix[hi] - unit_prefix[lo - 1];
          double cover_est = answer_range(noisy_tree, Range{lo, hi}, RangeMode::CoverSum);
          double inferred_est = released_prefix[hi] - released_prefix[lo - 1];

          unit_acc[si].add((unit_est - exact) * (unit_est - exact));
          cover_acc[si].add((cover_est - exact) * (cover_est - exact));
          inferred_acc[si].add((inferred_est - exact) * (inferred_est - exact));
        }
      }
    }
    for (size_t si = 0; si < sizes.size(); ++si) {
      report.cells.push_back(unit_acc[si].cell(eps, "l_noisy", sizes[si]));
      report.cells.push_back(cover_acc[si].cell(eps, "h_noisy", sizes[si]));
      report.cells.push_back(inferred_acc[si].cell(eps, "h_inferred", sizes[si]));
    }
  }
  return report;
}

WorstCaseResult worstcase_query_experiment(const TreeLayout& layout, double epsilon,
                                           int trials, std::uint64_t seed) {
  long n = layout.n_leaves();
  if (n < 4) throw std::invalid_argument("worst-case query needs at least 4 leaves");
  Range q{2, n - 1};
  double scale = layout.height() / epsilon;

  Accumulator inferred_acc, cover_acc;
  Rng root(seed);
  for (int t = 0; t < trials; ++t) {
    Rng rng = root.split(static_cast<std::uint64_t>(t));
    // Zero histogram: the released values are pure noise.
    TreeVector noisy{layout, std::vector<double>(layout.total_nodes())};
    for (double& v : noisy.values) v = laplace_sample(scale, rng);

    double cover_est = answer_range(noisy, q, RangeMode::CoverSum);
    cover_acc.add(cover_est * cover_est);

    TreeVector inferred = constrained_inference(noisy);
    // Consistency lets the interior sum collapse to root minus end leaves.
    double inferred_est = inferred.values[0] - inferred.values[layout.leaf_node(0)] -
                          inferred.values[layout.leaf_node(n - 1)];
    inferred_acc.add(inferred_est * inferred_est);
  }

  WorstCaseResult result;
  result.mse_inferred = inferred_acc.mean();
  result.mse_cover = cover_acc.mean();
  result.se_inferred = inferred_acc.std_error();
  result.se_cover = cover_acc.std_error();
  result.ratio = result.mse_inferred / result.mse_cover;
  return result;
}

Histogram synth_powerlaw(long n, double alpha, long xmax, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("domain size must be >= 1");
  if (xmax < 1) throw std::invalid_argument("xmax must be >= 1");
  std::vector<double> cdf(xmax);
  double total = 0.0;
  for (long x = 1; x <= xmax; ++x) {
    total += std::pow(static_cast<double>(x), -alpha);
    cdf[x - 1] = total;
  }
  for (double& c : cdf) c /= total;

  Rng rng(seed);
  std::vector<Count> counts(n);
  for (long i = 0; i < n; ++i) {
    double u = rng.next_unit();
    long lo = std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
    counts[i] = lo + 1;
  }
  return Histogram(std::move(counts));
}

Histogram synth_sparse(long n, double density, double scale, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("domain size must be >= 1");
  if (!(density > 0.0) || density > 1.0) {
    throw std::invalid_argument("density must be in (0, 1]");
  }
  Rng rng(seed);
  std::vector<Count> counts(n, 0);
  for (long i = 0; i < n; ++i) {
    if (rng.next_unit() <= density) {
      counts[i] = 1 + static_cast<Count>(-scale * std::log(rng.next_unit()));
    }
  }
  return Histogram(std::move(counts));
}

Histogram synth_uniform_runs(long n, long distinct, long gap) {
  if (distinct < 1 || distinct > n) throw std::invalid_argument("bad distinct count");
  std::vector<Count> counts(n);
  long run = n / distinct;
  for (long i = 0; i < n; ++i) {
    long level = std::min(i / run, distinct - 1);
    counts[i] = level * gap;
  }
  return Histogram(std::move(counts));
}

}  // namespace dphist
