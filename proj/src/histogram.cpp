#include "dphist/histogram.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace dphist {

Histogram::Histogram(std::vector<Count> counts) : counts_(std::move(counts)) {
  if (counts_.empty()) {
    throw std::invalid_argument("histogram must have at least one bucket");
  }
  for (Count c : counts_) {
    if (c < 0) throw std::invalid_argument("histogram counts must be non-negative");
  }
}

Count Histogram::total() const {
  return std::accumulate(counts_.begin(), counts_.end(), Count{0});
}

Count range_count(const Histogram& h, Range q) {
  if (q.lo < 1 || q.lo > q.hi || q.hi > h.size()) {
    throw std::out_of_range("range out of bounds");
  }
  Count sum = 0;
  for (long i = q.lo; i <= q.hi; ++i) sum += h.counts()[i - 1];
  return sum;
}

SortedCounts sorted_sequence(const Histogram& h) {
  SortedCounts s{h.counts()};
  std::sort(s.values.begin(), s.values.end());
  return s;
}

std::vector<Histogram> neighbors(const Histogram& h) {
  std::vector<Histogram> out;
  for (long i = 0; i < h.size(); ++i) {
    std::vector<Count> up = h.counts();
    up[i] += 1;
    out.emplace_back(std::move(up));
    if (h.counts()[i] > 0) {
      std::vector<Count> down = h.counts();
      down[i] -= 1;
      out.emplace_back(std::move(down));
    }
  }
  return out;
}

bool validate_sorted(const std::vector<double>& v) {
  for (size_t i = 1; i < v.size(); ++i) {
    if (v[i - 1] > v[i]) return false;
  }
  return true;
}

}  // namespace dphist
