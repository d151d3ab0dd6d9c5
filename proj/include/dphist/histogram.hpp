#pragma once

#include <cstdint>
#include <vector>

namespace dphist {

using Count = long long;

/// Inclusive bucket range, 1-based to match the unit-bucket domain [x_1..x_n].
struct Range {
  long lo = 1;
  long hi = 1;
};

/// Ground-truth histogram: one non-negative count per unit bucket.
class Histogram {
 public:
  explicit Histogram(std::vector<Count> counts);

  const std::vector<Count>& counts() const { return counts_; }
  long size() const { return static_cast<long>(counts_.size()); }
  Count total() const;

 private:
  std::vector<Count> counts_;
};

/// Non-decreasing counts (the rank-ordered view of a histogram).
struct SortedCounts {
  std::vector<Count> values;
};

/// Exact count of tuples falling in q. Throws std::out_of_range for an
/// invalid range.
Count range_count(const Histogram& h, Range q);

/// The counts of h in ascending rank order.
SortedCounts sorted_sequence(const Histogram& h);

/// All histograms reachable by adding one tuple to some bucket, or removing
/// one from a non-empty bucket.
std::vector<Histogram> neighbors(const Histogram& h);

/// True iff v is non-decreasing.
bool validate_sorted(const std::vector<double>& v);

}  // namespace dphist
