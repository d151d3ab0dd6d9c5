#include "dphist/tree.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace dphist {

TreeLayout::TreeLayout(int branching, int height) : k_(branching), height_(height) {
  if (k_ < 2) throw std::invalid_argument("branching factor must be >= 2");
  if (height_ < 1) throw std::invalid_argument("tree height must be >= 1");
  level_start_.resize(height_ + 1);
  long start = 0;
  long width = 1;
  for (int d = 0; d < height_; ++d) {
    level_start_[d] = start;
    start += width;
    width *= k_;
  }
  level_start_[height_] = start;
  total_nodes_ = start;
  n_leaves_ = level_start_[height_] - level_start_[height_ - 1];
}

TreeLayout TreeLayout::for_domain(long n, int branching) {
  if (n < 1) throw std::invalid_argument("domain size must be >= 1");
  if (branching < 2) throw std::invalid_argument("branching factor must be >= 2");
  int height = 1;
  long leaves = 1;
  while (leaves < n) {
    leaves *= branching;
    ++height;
  }
  return TreeLayout(branching, height);
}

int TreeLayout::depth(long node) const {
  int d = 0;
  while (node >= level_start_[d + 1]) ++d;
  return d;
}

long TreeLayout::level_size(int depth) const {
  return level_start_[depth + 1] - level_start_[depth];
}

long TreeLayout::level_offset(long node) const {
  return node - level_start_[depth(node)];
}

long TreeLayout::parent(long node) const {
  if (node == 0) throw std::invalid_argument("root has no parent");
  int d = depth(node);
  return level_start_[d - 1] + (node - level_start_[d]) / k_;
}

long TreeLayout::first_child(long node) const {
  int d = depth(node);
  if (d == height_ - 1) throw std::invalid_argument("leaf has no children");
  return level_start_[d + 1] + (node - level_start_[d]) * k_;
}

long TreeLayout::leaf_node(long leaf_index) const {
  return level_start_[height_ - 1] + leaf_index;
}

long TreeLayout::subtree_leaf_count(long node) const {
  long size = 1;
  for (int h = 1; h < node_height(node); ++h) size *= k_;
  return size;
}

Range TreeLayout::leaf_range(long node) const {
  long size = subtree_leaf_count(node);
  long offset = level_offset(node);
  return Range{offset * size + 1, (offset + 1) * size};
}

TreeVector hierarchical_sequence(const Histogram& h, int branching) {
  TreeLayout layout = TreeLayout::for_domain(h.size(), branching);
  std::vector<double> values(layout.total_nodes(), 0.0);
  for (long i = 0; i < h.size(); ++i) {
    values[layout.leaf_node(i)] = static_cast<double>(h.counts()[i]);
  }
  // Bottom-up sums; children are contiguous, so one backward scan suffices.
  for (long v = layout.total_nodes() - layout.n_leaves() - 1; v >= 0; --v) {
    double sum = 0.0;
    long c = layout.first_child(v);
    for (int j = 0; j < branching; ++j) sum += values[c + j];
    values[v] = sum;
  }
  return TreeVector{layout, std::move(values)};
}

bool validate_tree(const TreeVector& t, double tol) {
  const TreeLayout& layout = t.layout;
  long internal = layout.total_nodes() - layout.n_leaves();
  for (long v = 0; v < internal; ++v) {
    double sum = 0.0;
    long c = layout.first_child(v);
    for (int j = 0; j < layout.branching(); ++j) sum += t.values[c + j];
    if (std::abs(t.values[v] - sum) > tol) return false;
  }
  return true;
}

std::vector<double> tree_leaves(const TreeVector& t, long n) {
  long first = t.layout.leaf_node(0);
  return std::vector<double>(t.values.begin() + first, t.values.begin() + first + n);
}

}  // namespace dphist
