#pragma once

#include <vector>

#include "dphist/histogram.hpp"

namespace dphist {

/// Complete k-ary interval tree over a padded power-of-k leaf domain, laid
/// out in BFS order. Height counts nodes along a root-to-leaf path, so a
/// leaf has node height 1 and the root has node height `height()`.
class TreeLayout {
 public:
  TreeLayout(int branching, int height);

  /// Smallest layout with branching factor k whose leaves cover n buckets.
  static TreeLayout for_domain(long n, int branching);

  int branching() const { return k_; }
  int height() const { return height_; }
  long n_leaves() const { return n_leaves_; }
  long total_nodes() const { return total_nodes_; }

  int depth(long node) const;               // 0 at the root
  int node_height(long node) const { return height_ - depth(node); }
  long level_start(int depth) const { return level_start_[depth]; }
  long level_size(int depth) const;
  long level_offset(long node) const;       // position within its level

  bool is_root(long node) const { return node == 0; }
  bool is_leaf(long node) const { return node >= level_start_[height_ - 1]; }
  long parent(long node) const;
  long first_child(long node) const;

  long leaf_node(long leaf_index) const;    // leaf_index is 0-based
  long subtree_leaf_count(long node) const;
  Range leaf_range(long node) const;        // 1-based buckets under node

  friend bool operator==(const TreeLayout& a, const TreeLayout& b) {
    return a.k_ == b.k_ && a.height_ == b.height_;
  }

 private:
  int k_;
  int height_;
  long n_leaves_;
  long total_nodes_;
  std::vector<long> level_start_;           // height_+1 entries, sentinel last
};

/// Node values in BFS order over a TreeLayout.
struct TreeVector {
  TreeLayout layout;
  std::vector<double> values;
};

/// Evaluates the hierarchical query on h: leaves are h.counts zero-padded to
/// a power of k, every internal node is the sum of its children.
TreeVector hierarchical_sequence(const Histogram& h, int branching);

/// True iff every internal node equals the sum of its children within tol.
bool validate_tree(const TreeVector& t, double tol);

/// Leaf values in bucket order, truncated to n entries (drops padding).
std::vector<double> tree_leaves(const TreeVector& t, long n);

}  // namespace dphist
