#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dphist/tree.hpp"

namespace dphist {

/// Deterministic 64-bit generator (splitmix64). Kept in-tree so noise
/// streams are identical across platforms and standard library versions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();

  /// Uniform double in the open interval (0, 1).
  double next_unit();

  /// Independent substream for e.g. a trial index; derivation is pure, so
  /// parallel trials reproduce regardless of scheduling.
  Rng split(std::uint64_t stream) const;

 private:
  std::uint64_t state_;
};

struct PrivacyParams {
  double epsilon = 1.0;
  std::uint64_t seed = 0;
};

enum class StrategyKind { Unit, Sorted, Hierarchical };

/// Identifies one of the three query sequences; hierarchical carries its
/// branching factor.
struct Strategy {
  StrategyKind kind = StrategyKind::Unit;
  int branching = 0;

  static Strategy unit() { return {StrategyKind::Unit, 0}; }
  static Strategy sorted() { return {StrategyKind::Sorted, 0}; }
  static Strategy hierarchical(int k);

  std::string name() const;                  // "l", "s" or "h"
  static Strategy from_name(const std::string& name, int k);
};

/// Cumulative epsilon spend, one entry per release.
struct BudgetLedger {
  struct Entry {
    std::string label;
    double epsilon;
  };
  std::vector<Entry> entries;

  void add(std::string label, double epsilon) { entries.push_back({std::move(label), epsilon}); }
  double total() const;
};

/// A privatized query answer, tagged with everything needed to interpret it.
struct NoisyVector {
  std::vector<double> values;
  Strategy strategy;
  double epsilon = 0.0;
  double sensitivity = 0.0;
  std::optional<TreeLayout> layout;
};

/// One draw from a zero-mean Laplace with the given scale, via inverse-CDF
/// transform of a single uniform draw.
double laplace_sample(double scale, Rng& rng);

/// Max L1 displacement of the strategy's answer across neighboring
/// databases: 1 for unit and sorted, tree height for hierarchical.
double sensitivity_of(const Strategy& strategy, const TreeLayout* layout);

/// Adds i.i.d. Laplace(sensitivity/epsilon) noise to the exact strategy
/// output and records the spend in the ledger.
NoisyVector privatize(const std::vector<double>& truth, const Strategy& strategy,
                      const PrivacyParams& params, const TreeLayout* layout,
                      BudgetLedger& ledger);

}  // namespace dphist
