#include "dphist/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "dphist/isotonic.hpp"
#include "dphist/mechanism.hpp"
#include "dphist/tree_inference.hpp"

namespace dphist {

namespace {

// Solve the square system G x = b in place, partial pivoting.
std::vector<double> solve_dense(std::vector<std::vector<double>> g, std::vector<double> b) {
  long n = static_cast<long>(b.size());
  for (long col = 0; col < n; ++col) {
    long pivot = col;
    for (long r = col + 1; r < n; ++r) {
      if (std::abs(g[r][col]) > std::abs(g[pivot][col])) pivot = r;
    }
    if (g[pivot][col] == 0.0) throw std::runtime_error("singular aggregation system");
    std::swap(g[col], g[pivot]);
    std::swap(b[col], b[pivot]);
    for (long r = col + 1; r < n; ++r) {
      double f = g[r][col] / g[col][col];
      if (f == 0.0) continue;
      for (long c = col; c < n; ++c) g[r][c] -= f * g[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (long r = n - 1; r >= 0; --r) {
    double s = b[r];
    for (long c = r + 1; c < n; ++c) s -= g[r][c] * x[c];
    x[r] = s / g[r][r];
  }
  return x;
}

}  // namespace

TreeVector ls_tree_oracle(const TreeVector& noisy) {
  const TreeLayout& layout = noisy.layout;
  long n = layout.n_leaves();
  long m = layout.total_nodes();
  if (n > 64) throw std::invalid_argument("ls_tree_oracle is dense, needs <= 64 leaves");

  // A[v][u] = 1 iff leaf u lies under node v.
  std::vector<std::vector<double>> a(m, std::vector<double>(n, 0.0));
  for (long v = 0; v < m; ++v) {
    Range r = layout.leaf_range(v);
    for (long u = r.lo - 1; u < r.hi; ++u) a[v][u] = 1.0;
  }

  std::vector<std::vector<double>> gram(n, std::vector<double>(n, 0.0));
  std::vector<double> rhs(n, 0.0);
  for (long v = 0; v < m; ++v) {
    for (long i = 0; i < n; ++i) {
      if (a[v][i] == 0.0) continue;
      rhs[i] += noisy.values[v];
      for (long j = 0; j < n; ++j) gram[i][j] += a[v][j];
    }
  }

  std::vector<double> leaves = solve_dense(std::move(gram), std::move(rhs));

  TreeVector out{layout, std::vector<double>(m, 0.0)};
  for (long v = 0; v < m; ++v) {
    Range r = layout.leaf_range(v);
    double s = 0.0;
    for (long u = r.lo - 1; u < r.hi; ++u) s += leaves[u];
    out.values[v] = s;
  }
  return out;
}

std::vector<double> isotonic_projection_oracle(const std::vector<double>& noisy,
                                               int max_iters, double tol) {
  if (noisy.empty()) throw std::invalid_argument("isotonic input must be non-empty");
  long n = static_cast<long>(noisy.size());
  if (n > 256) throw std::invalid_argument("projection oracle limited to n <= 256");
  std::vector<double> x = noisy;
  if (n == 1) return x;
  // One correction pair per half-space constraint.
  std::vector<double> corr_lo(n - 1, 0.0), corr_hi(n - 1, 0.0);
  double residual = 0.0;
  for (int iter = 0; iter < max_iters; ++iter) {
    double max_move = 0.0;
    for (long i = 0; i < n - 1; ++i) {
      double a = x[i] + corr_lo[i];
      double b = x[i + 1] + corr_hi[i];
      double pa = a, pb = b;
      if (a > b) {
        pa = pb = 0.5 * (a + b);
      }
      corr_lo[i] = a - pa;
      corr_hi[i] = b - pb;
      max_move = std::max(max_move, std::max(std::abs(pa - x[i]), std::abs(pb - x[i + 1])));
      x[i] = pa;
      x[i + 1] = pb;
    }
    if (max_move < tol) return x;
    residual = max_move;
  }
  throw std::runtime_error("isotonic projection did not converge, residual " +
                           std::to_string(residual));
}

VerifyReport verify_random_instances(int instances, std::uint64_t seed,
                                     IsotonicFn isotonic_candidate,
                                     TreeInferenceFn tree_candidate) {
  VerifyReport report;
  report.instances = instances;
  Rng root(seed);
  const int branchings[] = {2, 3, 4};
  for (int t = 0; t < instances; ++t) {
    Rng rng = root.split(static_cast<std::uint64_t>(t));

    long n = 2 + static_cast<long>(rng.next_u64() % 63);  // 2..64
    std::vector<double> noisy(n);
    for (double& v : noisy) v = 20.0 * (rng.next_unit() - 0.5);

    std::vector<double> pava = isotonic_candidate != nullptr
                                   ? isotonic_candidate(noisy)
                                   : isotonic_pava(noisy).values;
    std::vector<double> minmax = isotonic_minmax(noisy).values;
    std::vector<double> dykstra = isotonic_projection_oracle(noisy, 200000, 1e-10);
    for (long i = 0; i < n; ++i) {
      report.max_isotonic_deviation = std::max(
          {report.max_isotonic_deviation, std::abs(pava[i] - minmax[i]),
           std::abs(pava[i] - dykstra[i])});
    }

    int k = branchings[rng.next_u64() % 3];
    int max_height = k == 2 ? 7 : (k == 3 ? 4 : 4);  // keep <= 64 leaves
    int height = 2 + static_cast<int>(rng.next_u64() % (max_height - 1));
    TreeLayout layout(k, height);
    TreeVector tree{layout, std::vector<double>(layout.total_nodes())};
    for (double& v : tree.values) v = 20.0 * (rng.next_unit() - 0.5);

    TreeVector closed = tree_candidate != nullptr ? tree_candidate(tree)
                                                  : constrained_inference(tree);
    TreeVector ls = ls_tree_oracle(tree);
    for (long v = 0; v < layout.total_nodes(); ++v) {
      report.max_tree_deviation =
          std::max(report.max_tree_deviation, std::abs(closed.values[v] - ls.values[v]));
    }
  }
  return report;
}

}  // namespace dphist
