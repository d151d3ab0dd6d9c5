#include "dphist/tree_inference.hpp"

#include <cmath>
#include <stdexcept>

#include "dphist/isotonic.hpp"

namespace dphist {

namespace {

double pow_int(int base, int exp) {
  double r = 1.0;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

void resum_internal(TreeVector& t) {
  const TreeLayout& layout = t.layout;
  for (long v = layout.total_nodes() - layout.n_leaves() - 1; v >= 0; --v) {
    double sum = 0.0;
    long c = layout.first_child(v);
    for (int j = 0; j < layout.branching(); ++j) sum += t.values[c + j];
    t.values[v] = sum;
  }
}

}  // namespace

TreeVector compute_z(const TreeVector& noisy) {
  const TreeLayout& layout = noisy.layout;
  int k = layout.branching();
  TreeVector z{layout, noisy.values};
  for (long v = layout.total_nodes() - layout.n_leaves() - 1; v >= 0; --v) {
    int h = layout.node_height(v);
    double kl = pow_int(k, h);
    double klm1 = pow_int(k, h - 1);
    double child_sum = 0.0;
    long c = layout.first_child(v);
    for (int j = 0; j < k; ++j) child_sum += z.values[c + j];
    z.values[v] = (kl - klm1) / (kl - 1.0) * noisy.values[v] +
                  (klm1 - 1.0) / (kl - 1.0) * child_sum;
  }
  return z;
}

TreeVector constrained_inference(const TreeVector& noisy) {
  const TreeLayout& layout = noisy.layout;
  int k = layout.branching();
  TreeVector z = compute_z(noisy);
  TreeVector out{layout, std::vector<double>(layout.total_nodes())};
  out.values[0] = z.values[0];
  long internal = layout.total_nodes() - layout.n_leaves();
  for (long v = 0; v < internal; ++v) {
    long c = layout.first_child(v);
    double child_z_sum = 0.0;
    for (int j = 0; j < k; ++j) child_z_sum += z.values[c + j];
    double adjust = (out.values[v] - child_z_sum) / k;
    for (int j = 0; j < k; ++j) out.values[c + j] = z.values[c + j] + adjust;
  }
  return out;
}

TreeVector zero_nonpositive_subtrees(const TreeVector& inferred) {
  const TreeLayout& layout = inferred.layout;
  TreeVector out = inferred;
  // Top-down: a node inside an already-zeroed subtree is skipped so only
  // maximal non-positive nodes trigger.
  std::vector<char> zeroed(layout.total_nodes(), 0);
  for (long v = 0; v < layout.total_nodes(); ++v) {
    if (!zeroed[v] && !layout.is_root(v)) zeroed[v] = zeroed[layout.parent(v)];
    if (zeroed[v] || out.values[v] <= 0.0) {
      zeroed[v] = 1;
      out.values[v] = 0.0;
    }
  }
  resum_internal(out);
  return out;
}

TreeVector round_consistent(const TreeVector& inferred) {
  TreeVector out = zero_nonpositive_subtrees(inferred);
  const TreeLayout& layout = out.layout;
  long first = layout.leaf_node(0);
  for (long v = first; v < layout.total_nodes(); ++v) {
    out.values[v] = static_cast<double>(round_nonneg(out.values[v]));
  }
  resum_internal(out);
  return out;
}

RangeCover range_cover(const TreeLayout& layout, Range q) {
  if (q.lo < 1 || q.lo > q.hi || q.hi > layout.n_leaves()) {
    throw std::out_of_range("range out of bounds");
  }
  RangeCover cover;
  long pos = q.lo;
  while (pos <= q.hi) {
    // Largest aligned subtree starting at pos that stays inside the range.
    long size = 1;
    int depth = layout.height() - 1;
    while (depth > 0 && (pos - 1) % (size * layout.branching()) == 0 &&
           pos + size * layout.branching() - 1 <= q.hi) {
      size *= layout.branching();
      --depth;
    }
    cover.roots.push_back(layout.level_start(depth) + (pos - 1) / size);
    pos += size;
  }
  return cover;
}

double answer_range(const TreeVector& tree, Range q, RangeMode mode) {
  const TreeLayout& layout = tree.layout;
  if (q.lo < 1 || q.lo > q.hi || q.hi > layout.n_leaves()) {
    throw std::out_of_range("range out of bounds");
  }
  double sum = 0.0;
  if (mode == RangeMode::CoverSum) {
    for (long v : range_cover(layout, q).roots) sum += tree.values[v];
  } else {
    long first = layout.leaf_node(0);
    for (long i = q.lo; i <= q.hi; ++i) sum += tree.values[first + i - 1];
  }
  return sum;
}

}  // namespace dphist
