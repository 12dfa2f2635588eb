#include <gtest/gtest.h>

#include "ktb/search.hpp"
#include "oracles.hpp"

using namespace ktb;

namespace {

PantsDecomposition single(const Slope& s) {
  return PantsDecomposition(PunctureConfig(4), {curve_of_slope(s)});
}

TEST(Search, FourPunctureNeighboursAtHeightOne) {
  SearchCaps caps;
  caps.max_slope_height = 1;
  const auto nb = neighbors(single({0, 1}), PathMode::p, caps);
  std::set<Slope> got;
  for (const auto& pd : nb) got.insert(pillowcase_slope(pd.curves()[0]));
  EXPECT_EQ(got, (std::set<Slope>{{1, 0}, {1, 1}, {-1, 1}}));
  for (const auto& pd : nb) EXPECT_EQ(step_kind(single({0, 1}), pd), MoveKind::a_move);
}

TEST(Search, NoStatesNoNeighbours) {
  SearchCaps caps;
  caps.max_states = 0;
  EXPECT_TRUE(neighbors(single({0, 1}), PathMode::p, caps).empty());
}

TEST(Search, CstarNeighboursIncludeFarSlopes) {
  SearchCaps caps;
  caps.max_slope_height = 3;
  const auto nb = neighbors(single({0, 1}), PathMode::cstar, caps);
  bool far = false;
  for (const auto& pd : nb) far = far || step_kind(single({0, 1}), pd) == MoveKind::astar_move;
  EXPECT_TRUE(far);
}

TEST(Search, SameEndpointsGiveEmptyPath) {
  SearchCaps caps;
  EXPECT_EQ(shortest_path_bounded(single({0, 1}), single({0, 1}), PathMode::p, caps).length(), 0u);
}

TEST(Search, SlopeTwoIsTwoMovesAway) {
  SearchCaps caps;
  caps.max_slope_height = 3;
  EXPECT_EQ(shortest_path_bounded(single({0, 1}), single({2, 1}), PathMode::p, caps).length(), 2u);
}

// Distances among slopes of height at most 5, with both sides restricted to
// the same slope height.
TEST(Search, FareyDistancesMatchSlopeBfs) {
  const auto slopes = oracle::fracs(5);
  SearchCaps caps;
  caps.max_slope_height = 5;
  caps.max_depth = 12;
  int checked = 0;
  for (std::size_t x = 0; x < slopes.size(); x += 2) {
    for (std::size_t y = x + 1; y < slopes.size(); y += 3) {
      const int want = oracle::farey_distance(slopes[x], slopes[y], 5);
      const MovePath p = shortest_path_bounded(single({slopes[x].p, slopes[x].q}),
                                               single({slopes[y].p, slopes[y].q}), PathMode::p, caps);
      EXPECT_EQ(static_cast<int>(p.length()), want);
      EXPECT_EQ(verify_path(p, PathMode::p), p.length());
      ++checked;
    }
  }
  EXPECT_GE(checked, 50);
}

TEST(Search, CstarDistanceAtMostP) {
  const auto slopes = oracle::fracs(4);
  SearchCaps caps;
  caps.max_slope_height = 4;
  for (std::size_t y = 1; y < slopes.size(); y += 4) {
    const auto a = single({1, 0});
    const auto b = single({slopes[y].p, slopes[y].q});
    const auto p = shortest_path_bounded(a, b, PathMode::p, caps).length();
    const auto c = shortest_path_bounded(a, b, PathMode::cstar, caps).length();
    EXPECT_LE(c, p);
    EXPECT_LE(c, 1u);
  }
}

TEST(Search, BidirectionalAgreesWithBreadthFirst) {
  const auto slopes = oracle::fracs(4);
  SearchCaps caps;
  caps.max_slope_height = 4;
  caps.max_depth = 10;
  for (std::size_t x = 0; x < slopes.size(); x += 4) {
    for (std::size_t y = x + 1; y < slopes.size(); y += 5) {
      const auto a = single({slopes[x].p, slopes[x].q});
      const auto b = single({slopes[y].p, slopes[y].q});
      const auto one = search_path(a, b, PathMode::p, caps);
      const auto two = search_path_bidirectional(a, b, PathMode::p, caps);
      ASSERT_TRUE(one.path && two.path);
      EXPECT_EQ(one.path->length(), two.path->length());
      EXPECT_EQ(verify_path(*two.path, PathMode::p), two.path->length());
    }
  }
}

TEST(Search, LargerCapsNeverLengthen) {
  const auto a = single({0, 1});
  const auto b = single({5, 2});
  std::optional<std::size_t> last;
  for (int h = 5; h <= 8; ++h) {
    SearchCaps caps;
    caps.max_slope_height = h;
    caps.max_depth = 8;
    const auto r = search_path(a, b, PathMode::p, caps);
    ASSERT_TRUE(r.path);
    if (last) {
      EXPECT_LE(r.path->length(), *last);
    }
    last = r.path->length();
    EXPECT_GE(static_cast<int>(r.path->length()), diff_lower_bound(a, b));
  }
}

TEST(Search, TinyCapsReportNotFound) {
  SearchCaps caps;
  caps.max_slope_height = 2;
  caps.max_depth = 1;
  try {
    shortest_path_bounded(single({0, 1}), single({5, 2}), PathMode::p, caps);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::not_found_within_bounds);
  }
}

TEST(Search, StateCapMarksResultHeuristic) {
  SearchCaps caps;
  caps.max_states = 2;
  caps.max_depth = 8;
  const auto r = search_path(single({0, 1}), single({5, 2}), PathMode::p, caps);
  EXPECT_FALSE(r.path);
  EXPECT_FALSE(r.stats.exhaustive);
}

TEST(Search, InvalidCapsRejected) {
  SearchCaps caps;
  caps.max_slope_height = 0;
  EXPECT_THROW(search_path(single({0, 1}), single({1, 0}), PathMode::p, caps), Error);
}

TrisectionCertificate edge_only(const PantsDecomposition& a, const PantsDecomposition& b, MovePath p) {
  TrisectionCertificate cert;
  cert.pairs[0].first = a;
  cert.pairs[1].second = b;
  cert.p_paths[0] = std::move(p);
  return cert;
}

// An edge padded with a move and its inverse is shortened back.
TEST(Search, ImproveCertificateRemovesPadding) {
  const auto a = single({0, 1});
  const auto m = single({1, 1});
  const auto b = single({2, 1});
  const TrisectionCertificate cert = edge_only(a, b, MovePath{{a, m, a, m, b}, PathMode::p});
  SearchCaps caps;
  caps.max_slope_height = 4;
  const Improvement imp = improve_certificate(cert, 0, PathMode::p, caps);
  ASSERT_TRUE(imp.path);
  EXPECT_EQ(imp.path->length(), 2u);
  EXPECT_EQ(imp.path->vertices.front(), a);
  EXPECT_EQ(imp.path->vertices.back(), b);
  EXPECT_FALSE(imp.provably_optimal);
}

TEST(Search, OptimalEdgeNeedsNoSearch) {
  const auto a = single({0, 1});
  const auto b = single({1, 1});
  const Improvement imp = improve_certificate(edge_only(a, b, MovePath{{a, b}, PathMode::p}), 0, PathMode::p, {});
  EXPECT_TRUE(imp.provably_optimal);
  EXPECT_FALSE(imp.path);
}

TEST(Search, TinyCapsGiveNoImprovement) {
  const auto a = single({0, 1});
  const auto m = single({1, 1});
  const auto b = single({2, 1});
  SearchCaps caps;
  caps.max_states = 1;
  const Improvement imp = improve_certificate(edge_only(a, b, MovePath{{a, m, a, m, b}, PathMode::p}), 0,
                                              PathMode::p, caps);
  EXPECT_FALSE(imp.path);
  EXPECT_FALSE(imp.stats.exhaustive);
}

}  // namespace
