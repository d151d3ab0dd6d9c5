#pragma once

#include <vector>

#include "dphist/tree.hpp"

namespace dphist {

/// Brute-force witnesses for the closed-form inference paths. These are
/// test-surface code: nothing in the release pipeline calls them.

/// Least squares on the tree aggregation system: unknowns are the leaf
/// counts, each node observation is the sum of the leaves under it. Solves
/// the normal equations by dense Gaussian elimination with partial pivoting
/// and emits the full consistent tree. Dense; requires <= 64 leaves.
TreeVector ls_tree_oracle(const TreeVector& noisy);

/// Dykstra's cyclic projection onto the half-spaces {x[i] <= x[i+1]}.
/// Converges to the projection onto the monotone cone. Throws a runtime
/// error reporting the residual if max_iters cycles are exhausted.
std::vector<double> isotonic_projection_oracle(const std::vector<double>& noisy,
                                               int max_iters, double tol);

/// Randomized cross-checks of the production solvers against the oracles.
struct VerifyReport {
  int instances = 0;
  double max_isotonic_deviation = 0.0;
  double max_tree_deviation = 0.0;
  double isotonic_tolerance = 1e-6;
  double tree_tolerance = 1e-8;

  bool ok() const {
    return max_isotonic_deviation <= isotonic_tolerance &&
           max_tree_deviation <= tree_tolerance;
  }
};

/// Hooks let tests substitute a deliberately broken solver and confirm the
/// cross-check catches it.
using IsotonicFn = std::vector<double> (*)(const std::vector<double>&);
using TreeInferenceFn = TreeVector (*)(const TreeVector&);

VerifyReport verify_random_instances(int instances, std::uint64_t seed,
                                     IsotonicFn isotonic_candidate = nullptr,
                                     TreeInferenceFn tree_candidate = nullptr);

}  // namespace dphist
