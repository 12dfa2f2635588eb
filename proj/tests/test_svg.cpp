#include <gtest/gtest.h>

#include <regex>

#include "ktb/certificate.hpp"
#include "ktb/svg.hpp"

using namespace ktb;

namespace {

std::size_t count(const std::string& s, const std::string& what) {
  std::size_t n = 0;
  for (std::size_t p = s.find(what); p != std::string::npos; p = s.find(what, p + 1)) ++n;
  return n;
}

TEST(Svg, RoundCurveOnEightPunctures) {
  const PunctureConfig eight(8);
  const std::string svg = render_curve_svg(make_round(eight, 1, 2));
  EXPECT_EQ(count(svg, "<circle"), 8u);
  EXPECT_EQ(count(svg, "<path"), 1u);
  EXPECT_NE(svg.find("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\""), std::string::npos);
}

TEST(Svg, SixOnePathHasSixPanels) {
  const TrisectionCertificate cert = load_certificate(KTB_CORPUS_DIR "/6_1_01.cert");
  const std::string svg = render_path_svg(cert.p_paths[0], cert.tangles[0], 0);
  EXPECT_EQ(count(svg, "<g>"), 6u);
  EXPECT_EQ(count(svg, "<path"), 6u * 5u);
  EXPECT_EQ(count(svg, "<circle"), 6u * 8u);
  // some curve survives the whole path and bounds a disk for the tangle
  EXPECT_NE(svg.find(kTangleColors[0]), std::string::npos);
  EXPECT_NE(svg.find(kCommonColor), std::string::npos);
}

TEST(Svg, PairUsesCommonColorForSharedCurves) {
  const TrisectionCertificate cert = load_certificate(KTB_CORPUS_DIR "/6_1_01.cert");
  const EfficientPair& p = cert.pairs[0];
  const std::string svg = render_pair_svg(p.first, 0, p.second, 2);
  const int shared = 5 - diff_lower_bound(p.first, p.second);
  EXPECT_EQ(count(svg, kCommonColor), static_cast<std::size_t>(2 * shared));
  EXPECT_EQ(count(svg, kTangleColors[0]), static_cast<std::size_t>(5 - shared));
  EXPECT_EQ(count(svg, kTangleColors[2]), static_cast<std::size_t>(5 - shared));
}

TEST(Svg, TangleHasOneCapPerBridge) {
  const TanglePresentation t(3, BraidWord::parse("s2 s3^-1"));
  const std::string svg = render_tangle_svg(t, 1);
  EXPECT_EQ(count(svg, "<path"), 3u);
  EXPECT_EQ(count(svg, "<circle"), 6u);
}

TEST(Svg, OutputIsDeterministic) {
  const TrisectionCertificate cert = load_certificate(KTB_CORPUS_DIR "/10_3.cert");
  EXPECT_EQ(render_path_svg(cert.p_paths[2], cert.tangles[2], 2),
            render_path_svg(cert.p_paths[2], cert.tangles[2], 2));
  EXPECT_EQ(render_tangle_svg(cert.tangles[0], 0), render_tangle_svg(cert.tangles[0], 0));
}

TEST(Svg, CoordinatesAreFinite) {
  const TrisectionCertificate cert = load_certificate(KTB_CORPUS_DIR "/10_1_-2-2.cert");
  const std::string svg = render_path_svg(cert.p_paths[0], cert.tangles[0], 0);
  EXPECT_EQ(svg.find("nan"), std::string::npos);
  EXPECT_EQ(svg.find("inf"), std::string::npos);
}

}  // namespace
