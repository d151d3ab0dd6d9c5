#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "dphist/histogram.hpp"
#include "dphist/mechanism.hpp"
#include "dphist/tree.hpp"
#include "dphist/tree_inference.hpp"

using namespace dphist;

namespace {

TreeVector random_tree(Rng& rng, int k, int height, double span) {
  TreeLayout layout(k, height);
  TreeVector t{layout, std::vector<double>(layout.total_nodes())};
  for (double& v : t.values) v = span * (rng.next_unit() - 0.5);
  return t;
}

void check_close(const std::vector<double>& got, const std::vector<double>& want, double tol) {
  REQUIRE(got.size() == want.size());
  for (size_t i = 0; i < got.size(); ++i) CHECK(std::abs(got[i] - want[i]) <= tol);
}

const std::vector<double> kFig1Noisy{13, 3, 11, 4, 1, 12, 1};
const std::vector<double> kFig1Inferred{14, 3, 11, 3, 0, 11, 0};

}  // namespace

TEST_CASE("compute_z on the worked noisy tree") {
  TreeVector noisy{TreeLayout(2, 3), kFig1Noisy};
  TreeVector z = compute_z(noisy);
  CHECK(z.values[0] == doctest::Approx(14.0));
  CHECK(z.values[1] == doctest::Approx(11.0 / 3.0));
  CHECK(z.values[2] == doctest::Approx(35.0 / 3.0));
  // leaves pass through
  for (int i = 3; i < 7; ++i) CHECK(z.values[i] == kFig1Noisy[i]);
}

TEST_CASE("compute_z is the identity on a consistent tree") {
  TreeVector t = hierarchical_sequence(Histogram({2, 0, 10, 2}), 2);
  check_close(compute_z(t).values, t.values, 1e-12);
  TreeVector zero{TreeLayout(2, 4), std::vector<double>(15, 0.0)};
  check_close(compute_z(zero).values, zero.values, 0.0);
}

TEST_CASE("constrained_inference reproduces the worked example") {
  TreeVector noisy{TreeLayout(2, 3), kFig1Noisy};
  TreeVector inferred = constrained_inference(noisy);
  check_close(inferred.values, kFig1Inferred, 1e-9);
  CHECK(validate_tree(inferred, 1e-9));
}

TEST_CASE("constrained_inference is the identity on consistent input") {
  TreeVector t = hierarchical_sequence(Histogram({3, 1, 4, 1, 5}), 2);
  check_close(constrained_inference(t).values, t.values, 1e-9);
}

TEST_CASE("constrained_inference output always satisfies the tree constraints") {
  Rng rng(17);
  for (int t = 0; t < 50; ++t) {
    int k = 2 + static_cast<int>(rng.next_u64() % 3);
    TreeVector noisy = random_tree(rng, k, 3, 40.0);
    CHECK(validate_tree(constrained_inference(noisy), 1e-9));
  }
}

TEST_CASE("constrained_inference is linear") {
  Rng rng(23);
  for (int t = 0; t < 20; ++t) {
    TreeVector x = random_tree(rng, 2, 4, 20.0);
    TreeVector y = random_tree(rng, 2, 4, 20.0);
    double a = 2.0 * rng.next_unit() - 1.0;
    double b = 2.0 * rng.next_unit() - 1.0;
    TreeVector combined = x;
    for (size_t i = 0; i < x.values.size(); ++i) {
      combined.values[i] = a * x.values[i] + b * y.values[i];
    }
    TreeVector lhs = constrained_inference(combined);
    TreeVector fx = constrained_inference(x);
    TreeVector fy = constrained_inference(y);
    for (size_t i = 0; i < x.values.size(); ++i) {
      CHECK(std::abs(lhs.values[i] - (a * fx.values[i] + b * fy.values[i])) <= 1e-9);
    }
  }
}

TEST_CASE("zero_nonpositive_subtrees") {
  SUBCASE("already non-negative tree is unchanged") {
    TreeVector t{TreeLayout(2, 3), kFig1Inferred};
    check_close(zero_nonpositive_subtrees(t).values, kFig1Inferred, 0.0);
  }
  SUBCASE("negative internal node zeroes its subtree and root is re-summed") {
    // leaves <-3, 1, 4, 2>, internal <-2, 6>, root 4
    TreeVector t{TreeLayout(2, 3), {4, -2, 6, -3, 1, 4, 2}};
    TreeVector out = zero_nonpositive_subtrees(t);
    check_close(out.values, {6, 0, 6, 0, 0, 4, 2}, 0.0);
    CHECK(validate_tree(out, 0.0));
  }
  SUBCASE("all non-positive tree becomes all zero") {
    TreeVector t{TreeLayout(2, 3), {-1, -1, 0, -1, 0, -1, 1}};
    for (double v : zero_nonpositive_subtrees(t).values) CHECK(v == 0.0);
  }
}

TEST_CASE("round_consistent") {
  TreeVector t{TreeLayout(2, 3), kFig1Inferred};
  check_close(round_consistent(t).values, kFig1Inferred, 0.0);

  TreeVector frac{TreeLayout(2, 2), {1.0, 0.4, 0.6}};
  check_close(round_consistent(frac).values, {1.0, 0.0, 1.0}, 0.0);

  Rng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    TreeVector rounded = round_consistent(constrained_inference(random_tree(rng, 2, 4, 15.0)));
    CHECK(validate_tree(rounded, 0.0));
    for (double v : rounded.values) {
      CHECK(v >= 0.0);
      CHECK(v == std::floor(v));
    }
  }
}

TEST_CASE("range_cover worked examples") {
  TreeLayout layout(2, 3);  // 4 leaves, BFS ids 0..6, leaves 3..6
  CHECK(range_cover(layout, {1, 4}).roots == std::vector<long>{0});
  CHECK(range_cover(layout, {2, 4}).roots == std::vector<long>{4, 2});
  CHECK(range_cover(layout, {2, 3}).roots == std::vector<long>{4, 5});
  CHECK_THROWS_AS(range_cover(layout, {0, 2}), std::out_of_range);
  CHECK_THROWS_AS(range_cover(layout, {1, 5}), std::out_of_range);
}

TEST_CASE("range_cover is exact, disjoint and within the size bound") {
  for (int k : {2, 3, 4}) {
    TreeLayout layout = TreeLayout::for_domain(256, k);
    long n = layout.n_leaves();
    long bound = 2L * (k - 1) * (layout.height() - 1);
    for (long lo = 1; lo <= n; lo += 7) {
      for (long hi = lo; hi <= n; hi += 5) {
        RangeCover cover = range_cover(layout, {lo, hi});
        CHECK(static_cast<long>(cover.roots.size()) <= std::max(bound, 1L));
        long pos = lo;
        for (long v : cover.roots) {
          Range r = layout.leaf_range(v);
          CHECK(r.lo == pos);
          pos = r.hi + 1;
        }
        CHECK(pos == hi + 1);
      }
    }
  }
}

TEST_CASE("answer_range on the worked noisy tree") {
  TreeVector noisy{TreeLayout(2, 3), kFig1Noisy};
  CHECK(answer_range(noisy, {1, 4}, RangeMode::CoverSum) == doctest::Approx(13.0));
  CHECK(answer_range(noisy, {2, 4}, RangeMode::CoverSum) == doctest::Approx(12.0));
  CHECK(answer_range(noisy, {2, 4}, RangeMode::LeafSum) == doctest::Approx(14.0));

  // On a consistent tree the two modes agree everywhere.
  TreeVector t = hierarchical_sequence(Histogram({2, 0, 10, 2}), 2);
  for (long lo = 1; lo <= 4; ++lo) {
    for (long hi = lo; hi <= 4; ++hi) {
      CHECK(answer_range(t, {lo, hi}, RangeMode::CoverSum) ==
            doctest::Approx(answer_range(t, {lo, hi}, RangeMode::LeafSum)));
    }
  }
}
