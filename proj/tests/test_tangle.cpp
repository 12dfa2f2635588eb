#include <gtest/gtest.h>

#include <random>

#include "ktb/tangle.hpp"
#include "oracles.hpp"

using namespace ktb;

namespace {

// Every round curve against the standard trivial tangle, against both the
// reduced meridian product and the set-level rule.
TEST(Tangle, RoundCurvesOnStandardTangle) {
  int checked = 0;
  for (int b = 2; b <= 4; ++b) {
    const TanglePresentation t(b, BraidWord{});
    const int n = 2 * b;
    for (int i = 1; i <= n; ++i) {
      for (int j = i + 1; j <= n; ++j) {
        const int size = j - i + 1;
        if (size > n - 2) continue;
        const Curve c = make_round(t.config(), i, j);
        const std::size_t len = oracle::round_meridian_product(i, j).size();
        EXPECT_EQ(is_compressing(c, t), len == 0) << i << ".." << j;
        EXPECT_EQ(is_cut(c, t), len == 1) << i << ".." << j;
        EXPECT_EQ(is_compressing(c, t), oracle::union_of_pairs(i, j)) << i << ".." << j;
        EXPECT_EQ(is_cut(c, t), oracle::pairs_plus_one(i, j)) << i << ".." << j;
        EXPECT_EQ(curve_word(c, t).size(), len);
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 20);
}

TEST(Tangle, ExamplesOnFourPunctures) {
  const TanglePresentation t(2, BraidWord{});
  const PunctureConfig& four = t.config();
  EXPECT_TRUE(is_compressing(make_round(four, 1, 2), t));
  EXPECT_EQ(curve_word(make_round(four, 2, 3), t).size(), 2u);
  EXPECT_FALSE(is_cut(make_round(four, 2, 3), t));
}

// Moving a curve and the tangle by the same braid leaves the class alone.
TEST(Tangle, ClassificationIsBraidInvariant) {
  std::mt19937 rng(21);
  for (int b = 2; b <= 4; ++b) {
    const int n = 2 * b;
    for (int it = 0; it < 60; ++it) {
      const Curve c = oracle::random_round(rng, n);
      const BraidWord w = oracle::random_word(rng, n, 12);
      const TanglePresentation std_t(b, BraidWord{});
      const TanglePresentation moved(b, w);
      const Curve image = act(w, c);
      EXPECT_EQ(is_compressing(image, moved), is_compressing(c, std_t));
      EXPECT_EQ(is_cut(image, moved), is_cut(c, std_t));
      EXPECT_EQ(moved.pull_back(image), c);
    }
  }
}

// Sliding an arc endpoint over a cap does not change the tangle.
TEST(Tangle, CapTwistsPreserveDiskSet) {
  std::mt19937 rng(22);
  const int b = 3;
  const TanglePresentation plain(b, BraidWord{});
  const TanglePresentation twisted(b, BraidWord::parse("s1 s3 s5^-1"));
  for (int it = 0; it < 40; ++it) {
    const Curve c = oracle::random_curve(rng, 2 * b, 8);
    EXPECT_EQ(is_compressing(c, plain), is_compressing(c, twisted)) << c.key();
    EXPECT_EQ(is_cut(c, plain), is_cut(c, twisted)) << c.key();
  }
}

TEST(Tangle, ReducingCurves) {
  const TanglePresentation t(2, BraidWord{});
  const Curve c = make_round(t.config(), 1, 2);
  EXPECT_TRUE(is_reducing(c, t, t));
  const TanglePresentation u(2, BraidWord::parse("s2"));
  EXPECT_FALSE(is_reducing(c, t, u));
}

TEST(Tangle, DiskSetMembership) {
  const TanglePresentation t(3, BraidWord{});
  const PunctureConfig& six = t.config();
  const PantsDecomposition good(six, {make_round(six, 1, 2), make_round(six, 1, 3), make_round(six, 1, 4)});
  EXPECT_TRUE(in_dc(good, t));
  const PantsDecomposition bad(six, {make_round(six, 2, 3), make_round(six, 1, 3), make_round(six, 1, 4)});
  EXPECT_FALSE(in_dc(bad, t));
  try {
    dc_membership(bad, t);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::not_in_dc);
  }
}

TEST(Tangle, ArcEndpointsFollowBraid) {
  const TanglePresentation t(2, BraidWord::parse("s2"));
  const auto arcs = t.arc_endpoints();
  ASSERT_EQ(arcs.size(), 2u);
  EXPECT_EQ(arcs[0], (std::pair<int, int>{1, 3}));
  EXPECT_EQ(arcs[1], (std::pair<int, int>{2, 4}));
}

}  // namespace
