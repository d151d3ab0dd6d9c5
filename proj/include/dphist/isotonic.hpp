#pragma once

#include <vector>

#include "dphist/histogram.hpp"

namespace dphist {

/// Maximal constant run of an isotonic fit; [start, end] are 0-based
/// inclusive indices and level equals the input mean over the run.
struct IsotonicBlock {
  long start;
  long end;
  double level;
};

/// Least-squares projection of a vector onto the non-decreasing cone.
struct IsotonicSolution {
  std::vector<double> values;
  std::vector<IsotonicBlock> blocks;
};

/// Direct min-max evaluation: out[j] = max over i <= j of the minimum
/// running mean starting at i. Quadratic; exists as an independent witness
/// for the pooled solver.
IsotonicSolution isotonic_minmax(const std::vector<double>& noisy);

/// Pool-adjacent-violators: merge neighboring runs while their means are
/// out of order. Linear amortized.
IsotonicSolution isotonic_pava(const std::vector<double>& noisy);

/// Baseline estimator: sort ascending, round each entry to the nearest
/// non-negative integer (half away from zero, negatives clamp to 0).
std::vector<Count> sort_round_baseline(const std::vector<double>& noisy);

/// Rounds an isotonic fit to non-negative integers; monotone rounding keeps
/// the result non-decreasing.
std::vector<Count> round_sorted(const IsotonicSolution& sol);

/// Nearest non-negative integer, half away from zero.
Count round_nonneg(double x);

}  // namespace dphist
