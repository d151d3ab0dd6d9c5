#include "dphist/isotonic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dphist {

namespace {

std::vector<double> fill_from_blocks(const std::vector<IsotonicBlock>& blocks, size_t n) {
  std::vector<double> out(n);
  for (const IsotonicBlock& b : blocks) {
    for (long i = b.start; i <= b.end; ++i) out[i] = b.level;
  }
  return out;
}

}  // namespace

IsotonicSolution isotonic_minmax(const std::vector<double>& noisy) {
  if (noisy.empty()) throw std::invalid_argument("isotonic input must be non-empty");
  long n = static_cast<long>(noisy.size());
  std::vector<double> prefix(n + 1, 0.0);
  for (long i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + noisy[i];
  auto mean = [&](long i, long j) { return (prefix[j + 1] - prefix[i]) / double(j - i + 1); };

  // out[kk] = max over i <= kk of min over j >= i of mean(i, j).
  // inner_min[i] is independent of kk, so compute it once.
  std::vector<double> inner_min(n);
  for (long i = 0; i < n; ++i) {
    double m = std::numeric_limits<double>::infinity();
    for (long j = i; j < n; ++j) m = std::min(m, mean(i, j));
    inner_min[i] = m;
  }
  std::vector<double> values(n);
  double running = -std::numeric_limits<double>::infinity();
  for (long kk = 0; kk < n; ++kk) {
    running = std::max(running, inner_min[kk]);
    values[kk] = running;
  }

  // Recover blocks from the level structure; levels within a block are
  // bit-identical because the same running max is reused.
  IsotonicSolution sol;
  sol.values = values;
  long start = 0;
  for (long i = 1; i <= n; ++i) {
    if (i == n || values[i] != values[start]) {
      sol.blocks.push_back({start, i - 1, values[start]});
      start = i;
    }
  }
  return sol;
}

IsotonicSolution isotonic_pava(const std::vector<double>& noisy) {
  if (noisy.empty()) throw std::invalid_argument("isotonic input must be non-empty");
  struct Pool {
    long start;
    long end;
    double sum;
    double mean() const { return sum / double(end - start + 1); }
  };
  std::vector<Pool> pools;
  pools.reserve(noisy.size());
  for (long i = 0; i < static_cast<long>(noisy.size()); ++i) {
    pools.push_back({i, i, noisy[i]});
    while (pools.size() >= 2 && pools[pools.size() - 2].mean() >= pools.back().mean()) {
      Pool top = pools.back();
      pools.pop_back();
      pools.back().end = top.end;
      pools.back().sum += top.sum;
    }
  }
  IsotonicSolution sol;
  sol.blocks.reserve(pools.size());
  for (const Pool& p : pools) sol.blocks.push_back({p.start, p.end, p.mean()});
  sol.values = fill_from_blocks(sol.blocks, noisy.size());
  return sol;
}

Count round_nonneg(double x) {
  if (x <= 0.0) return 0;
  return static_cast<Count>(std::floor(x + 0.5));
}

std::vector<Count> sort_round_baseline(const std::vector<double>& noisy) {
  std::vector<double> sorted = noisy;
  std::sort(sorted.begin(), sorted.end());
  std::vector<Count> out;
  out.reserve(sorted.size());
  for (double v : sorted) out.push_back(round_nonneg(v));
  return out;
}

std::vector<Count> round_sorted(const IsotonicSolution& sol) {
  std::vector<Count> out;
  out.reserve(sol.values.size());
  for (double v : sol.values) out.push_back(round_nonneg(v));
  return out;
}

}  // namespace dphist
