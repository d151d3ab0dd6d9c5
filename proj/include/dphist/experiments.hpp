#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dphist/histogram.hpp"
#include "dphist/mechanism.hpp"
#include "dphist/tree.hpp"

namespace dphist {

struct ExperimentConfig {
  std::vector<double> epsilons{1.0, 0.1, 0.01};
  int trials = 50;
  int ranges_per_trial = 1000;
  std::uint64_t seed = 0;
  int branching = 2;
  std::string dataset;
};

/// One table cell: mean squared error of an estimator at a privacy level,
/// optionally restricted to ranges of one size (range_size 0 means the
/// whole released vector).
struct ReportCell {
  double epsilon = 0.0;
  std::string estimator;
  long range_size = 0;
  double mse = 0.0;
  double std_error = 0.0;
  long samples = 0;
};

struct ExperimentReport {
  std::string name;
  std::string dataset;
  std::uint64_t seed = 0;
  std::vector<ReportCell> cells;
  long distinct_values = 0;            // d of the sorted truth
  std::vector<long> multiplicities;    // n_1..n_d

  const ReportCell& cell(double epsilon, const std::string& estimator,
                         long range_size = 0) const;
  std::string to_csv() const;
  std::string to_json() const;
};

/// Average over samples of the summed squared deviation from truth.
double mse(const std::vector<std::vector<double>>& samples, const std::vector<double>& truth);

/// Sorted-histogram protocol: per epsilon, draws `trials` noisy sorted
/// vectors and scores the raw release ("s_noisy"), the sort-and-round
/// baseline ("s_round") and the isotonic fit ("s_inferred") against the
/// sorted truth.
ExperimentReport run_unattributed_experiment(const Histogram& h, const ExperimentConfig& cfg);

/// Range-query protocol: per epsilon and per range size 2^i
/// (i = 1..height-2), scores unit-count summation ("l_noisy"), subtree
/// cover sums over the raw tree ("h_noisy") and leaf sums over the rounded
/// consistent tree ("h_inferred") on uniformly located random ranges.
ExperimentReport run_range_experiment(const Histogram& h, const ExperimentConfig& cfg);

struct WorstCaseResult {
  double mse_inferred = 0.0;
  double mse_cover = 0.0;
  double se_inferred = 0.0;
  double se_cover = 0.0;
  double ratio = 0.0;      // mse_inferred / mse_cover
};

/// The adversarial query: every leaf except the leftmost and rightmost, on
/// an all-zero histogram. Compares the consistent estimate against the raw
/// cover sum.
WorstCaseResult worstcase_query_experiment(const TreeLayout& layout, double epsilon,
                                           int trials, std::uint64_t seed);

/// Bucket counts drawn i.i.d. from a discrete power law on {1..xmax}.
Histogram synth_powerlaw(long n, double alpha, long xmax, std::uint64_t seed);

/// Sparse histogram: each bucket nonzero with probability `density`;
/// nonzero counts are geometric-tailed with the given scale.
Histogram synth_sparse(long n, double density, double scale, std::uint64_t seed);

/// Deterministic staircase truth: `distinct` equal-length runs with levels
/// 0, gap, 2*gap, ... Used for distinct-value sweeps.
Histogram synth_uniform_runs(long n, long distinct, long gap);

}  // namespace dphist
