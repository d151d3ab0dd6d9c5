#pragma once

#include <vector>

#include "dphist/tree.hpp"

namespace dphist {

/// Disjoint subtree roots whose leaf ranges exactly tile a query range.
struct RangeCover {
  std::vector<long> roots;
};

enum class RangeMode { CoverSum, LeafSum };

/// Bottom-up pass: variance-weighted blend of a node's own noisy count and
/// the sum of its children's estimates. Leaves pass through unchanged.
TreeVector compute_z(const TreeVector& noisy);

/// Minimum-L2 consistent estimate: compute_z bottom-up, then a top-down
/// adjustment that spreads each parent/child mismatch evenly over the k
/// children. Output satisfies the parent-equals-sum-of-children constraints.
TreeVector constrained_inference(const TreeVector& noisy);

/// For every maximal node with value <= 0, zero its whole subtree, then
/// recompute internal nodes from the surviving leaves.
TreeVector zero_nonpositive_subtrees(const TreeVector& inferred);

/// Zero non-positive subtrees, round leaves to non-negative integers, and
/// re-sum internal nodes. Output is integral, non-negative and consistent.
TreeVector round_consistent(const TreeVector& inferred);

/// Canonical greedy decomposition: repeatedly take the largest subtree that
/// starts at the current position and fits inside the range.
RangeCover range_cover(const TreeLayout& layout, Range q);

/// CoverSum: sum of tree values at the cover roots. LeafSum: sum of leaf
/// values inside the range.
double answer_range(const TreeVector& tree, Range q, RangeMode mode);

}  // namespace dphist
