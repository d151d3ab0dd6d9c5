#include "dphist/mechanism.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dphist {

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t Rng::next_u64() {
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::next_unit() {
  // 53 random bits, offset by half an ulp so 0 and 1 are excluded.
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1p-53;
}

Rng Rng::split(std::uint64_t stream) const {
  return Rng(mix64(state_ ^ mix64(stream + 0x6a09e667f3bcc909ULL)));
}

Strategy Strategy::hierarchical(int k) {
  if (k < 2) throw std::invalid_argument("branching factor must be >= 2");
  return {StrategyKind::Hierarchical, k};
}

std::string Strategy::name() const {
  switch (kind) {
    case StrategyKind::Unit: return "l";
    case StrategyKind::Sorted: return "s";
    case StrategyKind::Hierarchical: return "h";
  }
  return "?";
}

Strategy Strategy::from_name(const std::string& name, int k) {
  if (name == "l") return unit();
  if (name == "s") return sorted();
  if (name == "h") return hierarchical(k);
  throw std::invalid_argument("unknown strategy: " + name);
}

double BudgetLedger::total() const {
  double sum = 0.0;
  for (const Entry& e : entries) sum += e.epsilon;
  return sum;
}

double laplace_sample(double scale, Rng& rng) {
  if (!(scale > 0.0)) throw std::invalid_argument("laplace scale must be positive");
  double u = rng.next_unit() - 0.5;
  double sign = u < 0.0 ? -1.0 : 1.0;
  return -scale * sign * std::log(1.0 - 2.0 * std::abs(u));
}

double sensitivity_of(const Strategy& strategy, const TreeLayout* layout) {
  switch (strategy.kind) {
    case StrategyKind::Unit:
    case StrategyKind::Sorted:
      return 1.0;
    case StrategyKind::Hierarchical:
      if (layout == nullptr) {
        throw std::invalid_argument("hierarchical strategy requires a tree layout");
      }
      return static_cast<double>(layout->height());
  }
  throw std::invalid_argument("unknown strategy");
}

NoisyVector privatize(const std::vector<double>& truth, const Strategy& strategy,
                      const PrivacyParams& params, const TreeLayout* layout,
                      BudgetLedger& ledger) {
  if (!(params.epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  double sensitivity = sensitivity_of(strategy, layout);
  double scale = sensitivity / params.epsilon;
  Rng rng(params.seed);
  NoisyVector out;
  out.values.reserve(truth.size());
  for (double t : truth) out.values.push_back(t + laplace_sample(scale, rng));
  out.strategy = strategy;
  out.epsilon = params.epsilon;
  out.sensitivity = sensitivity;
  if (layout != nullptr) out.layout = *layout;
  ledger.add(strategy.name(), params.epsilon);
  return out;
}

}  // namespace dphist
