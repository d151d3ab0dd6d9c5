#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>

#include "dphist/histogram.hpp"
#include "dphist/mechanism.hpp"
#include "dphist/tree.hpp"

using namespace dphist;

namespace {

Histogram random_histogram(Rng& rng, long max_n, Count max_count) {
  long n = 1 + static_cast<long>(rng.next_u64() % max_n);
  std::vector<Count> counts(n);
  for (Count& c : counts) c = static_cast<Count>(rng.next_u64() % (max_count + 1));
  return Histogram(std::move(counts));
}

double l1_dist(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s;
}

std::vector<double> as_doubles(const std::vector<Count>& v) {
  return std::vector<double>(v.begin(), v.end());
}

}  // namespace

TEST_CASE("range_count sums the exact bucket counts") {
  Histogram h({2, 0, 10, 2});
  CHECK(range_count(h, {3, 4}) == 12);
  CHECK(range_count(h, {1, 4}) == 14);
  CHECK(range_count(h, {2, 2}) == 0);
  CHECK(range_count(h, {3, 3}) == 10);
  CHECK_THROWS_AS(range_count(h, {0, 2}), std::out_of_range);
  CHECK_THROWS_AS(range_count(h, {3, 5}), std::out_of_range);
  CHECK_THROWS_AS(range_count(h, {4, 3}), std::out_of_range);
}

TEST_CASE("histogram rejects bad counts") {
  CHECK_THROWS_AS(Histogram({}), std::invalid_argument);
  CHECK_THROWS_AS(Histogram({1, -1}), std::invalid_argument);
}

TEST_CASE("sorted_sequence is a non-decreasing permutation") {
  CHECK(sorted_sequence(Histogram({2, 0, 10, 2})).values == std::vector<Count>{0, 2, 2, 10});
  CHECK(sorted_sequence(Histogram({1, 2, 3})).values == std::vector<Count>{1, 2, 3});
  CHECK(sorted_sequence(Histogram({5, 5, 5})).values == std::vector<Count>{5, 5, 5});

  Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    Histogram h = random_histogram(rng, 40, 20);
    std::vector<Count> sorted = sorted_sequence(h).values;
    CHECK(std::is_sorted(sorted.begin(), sorted.end()));
    std::vector<Count> original = h.counts();
    std::sort(original.begin(), original.end());
    CHECK(sorted == original);  // multiset preserved
  }
}

TEST_CASE("hierarchical_sequence matches the worked binary tree") {
  TreeVector t = hierarchical_sequence(Histogram({2, 0, 10, 2}), 2);
  CHECK(t.values == std::vector<double>{14, 2, 12, 2, 0, 10, 2});
  CHECK(t.layout.height() == 3);
  CHECK(validate_tree(t, 0.0));
}

TEST_CASE("hierarchical_sequence pads to the next power of k") {
  TreeVector t = hierarchical_sequence(Histogram({3, 1, 4, 1, 5}), 2);
  CHECK(t.layout.n_leaves() == 8);
  CHECK(t.layout.total_nodes() == 15);
  CHECK(t.values[0] == 14.0);
  CHECK(tree_leaves(t, 8) == std::vector<double>{3, 1, 4, 1, 5, 0, 0, 0});
  CHECK(tree_leaves(t, 5) == std::vector<double>{3, 1, 4, 1, 5});
  CHECK(validate_tree(t, 0.0));

  TreeVector zero = hierarchical_sequence(Histogram({0, 0, 0}), 2);
  for (double v : zero.values) CHECK(v == 0.0);

  CHECK_THROWS_AS(hierarchical_sequence(Histogram({1}), 1), std::invalid_argument);
}

TEST_CASE("tree layout index arithmetic round-trips") {
  for (int k : {2, 3, 4}) {
    TreeLayout layout(k, 4);
    CHECK(layout.n_leaves() == k * k * k);
    for (long v = 1; v < layout.total_nodes(); ++v) {
      long p = layout.parent(v);
      long c = layout.first_child(p);
      CHECK(v >= c);
      CHECK(v < c + k);
      CHECK(layout.depth(p) == layout.depth(v) - 1);
    }
    // root covers everything
    Range r = layout.leaf_range(0);
    CHECK(r.lo == 1);
    CHECK(r.hi == layout.n_leaves());
  }
}

TEST_CASE("neighbors enumerates unit count changes") {
  std::vector<Histogram> nb = neighbors(Histogram({0}));
  REQUIRE(nb.size() == 1);
  CHECK(nb[0].counts() == std::vector<Count>{1});

  nb = neighbors(Histogram({1, 0}));
  REQUIRE(nb.size() == 3);

  Rng rng(7);
  for (int t = 0; t < 20; ++t) {
    Histogram h = random_histogram(rng, 24, 5);
    long nonzero = std::count_if(h.counts().begin(), h.counts().end(),
                                 [](Count c) { return c > 0; });
    CHECK(static_cast<long>(neighbors(h).size()) == h.size() + nonzero);
  }
}

TEST_CASE("validators match the worked examples") {
  CHECK(validate_sorted({1, 1, 1, 11}));
  CHECK_FALSE(validate_sorted({1, 2, 0, 11}));
  CHECK(validate_sorted({3.0}));

  TreeVector consistent = hierarchical_sequence(Histogram({2, 0, 10, 2}), 2);
  CHECK(validate_tree(consistent, 1e-9));
  TreeVector broken = consistent;
  broken.values[1] += 0.5;
  CHECK_FALSE(validate_tree(broken, 1e-9));
}

TEST_CASE("neighbor L1 displacement is 1 for unit and sorted, height for tree") {
  Rng rng(1234);
  for (int t = 0; t < 25; ++t) {
    Histogram h = random_histogram(rng, 32, 6);
    TreeVector tree = hierarchical_sequence(h, 2);
    int height = tree.layout.height();
    std::vector<double> base = as_doubles(h.counts());
    std::vector<double> base_sorted = as_doubles(sorted_sequence(h).values);

    double max_l = 0.0, max_s = 0.0, max_h = 0.0;
    for (const Histogram& nb : neighbors(h)) {
      max_l = std::max(max_l, l1_dist(as_doubles(nb.counts()), base));
      max_s = std::max(max_s, l1_dist(as_doubles(sorted_sequence(nb).values), base_sorted));
      max_h = std::max(max_h, l1_dist(hierarchical_sequence(nb, 2).values, tree.values));
    }
    CHECK(max_l == 1.0);
    CHECK(max_s == 1.0);
    CHECK(max_h == static_cast<double>(height));
  }
}
