#include <gtest/gtest.h>

#include "ktb/assemble.hpp"
#include "ktb/certificate.hpp"
#include "oracles.hpp"

using namespace ktb;

namespace {

PantsDecomposition single(const Slope& s) {
  return PantsDecomposition(PunctureConfig(4), {curve_of_slope(s)});
}

TEST(Legalize, AStarMoveSplitsThroughCommonNeighbour) {
  // 0/1 and 2/1 meet four times and share the neighbour 1/1
  const auto step = legalize_step(single({0, 1}), single({2, 1}), PathMode::p);
  ASSERT_TRUE(step);
  ASSERT_EQ(step->size(), 2u);
  EXPECT_EQ(step_kind(single({0, 1}), (*step)[0]), MoveKind::a_move);
  EXPECT_EQ(step_kind((*step)[0], (*step)[1]), MoveKind::a_move);
}

TEST(Legalize, LegalStepIsKept) {
  const auto step = legalize_step(single({0, 1}), single({2, 1}), PathMode::cstar);
  ASSERT_TRUE(step);
  EXPECT_EQ(step->size(), 1u);
}

TEST(Legalize, FarSlopesAreNotRepaired) {
  EXPECT_FALSE(legalize_step(single({0, 1}), single({4, 1}), PathMode::p));
}

TEST(Legalize, TwoCurveChangeIsSplit) {
  const PunctureConfig six(6);
  const PantsDecomposition a(six, {make_round(six, 1, 2), make_round(six, 1, 3), make_round(six, 1, 4)});
  const PantsDecomposition b(six, {make_round(six, 2, 3), make_round(six, 1, 3), make_round(six, 4, 5)});
  ASSERT_EQ(diff_lower_bound(a, b), 2);
  const LegalizedPath out = legalize({a, b}, PathMode::p);
  EXPECT_EQ(out.path.length(), 2u);
  EXPECT_EQ(out.repaired.size(), 1u);
  EXPECT_EQ(out.path.vertices.back(), b);
}

TEST(Shorten, RemovesDetourButNotBelowTarget) {
  const auto a = single({0, 1});
  const auto m = single({1, 1});
  const auto b = single({2, 1});
  ShortenOptions opt;
  opt.caps.max_slope_height = 3;
  opt.target = 2;
  const MovePath out = shorten(MovePath{{a, m, a, m, b}, PathMode::p}, PathMode::p, opt);
  EXPECT_EQ(out.length(), 2u);
  opt.target = 4;
  EXPECT_EQ(shorten(MovePath{{a, m, a, m, b}, PathMode::p}, PathMode::p, opt).length(), 4u);
}

TEST(DiskCurves, ImagesOfRoundCurvesAreDisks) {
  const TrisectionCertificate cert = load_certificate(KTB_CORPUS_DIR "/6_1_01.cert");
  const auto curves = disk_curves_avoiding(cert.tangles[0], {});
  EXPECT_FALSE(curves.empty());
  for (const Curve& c : curves) EXPECT_LE(curve_word(c, cert.tangles[0]).size(), 1u);
}

}  // namespace
