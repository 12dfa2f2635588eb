#include <gtest/gtest.h>

#include <chrono>

#include "corpus_reference.hpp"
#include "ktb/certificate.hpp"
#include "ktb/search.hpp"

using namespace ktb;

namespace {

std::string path_of(const Reference& r) { return std::string(KTB_CORPUS_DIR) + "/" + r.file + ".cert"; }

class CorpusTest : public ::testing::TestWithParam<Reference> {};

TEST_P(CorpusTest, VerifiesWithPublishedEdgeLengths) {
  const Reference& ref = GetParam();
  const auto t0 = std::chrono::steady_clock::now();
  const TrisectionCertificate cert = load_certificate(path_of(ref));
  const BoundReport r = verify_certificate(cert);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  EXPECT_LT(secs, 10.0);
  EXPECT_EQ(r.label, ref.label);
  EXPECT_EQ(r.L_upper, ref.L);
  EXPECT_EQ(r.Lstar_upper, ref.Lstar);
  if (ref.label == kFlaggedLabel) {
    EXPECT_TRUE(r.flagged());
  } else {
    EXPECT_EQ(r.p_lengths, ref.p);
    EXPECT_EQ(r.cstar_lengths, ref.cstar.value_or(ref.p));
    EXPECT_FALSE(r.flagged()) << format_report_text(r);
  }
  if (ref.cstar) {
    EXPECT_EQ(r.cstar_lengths, *ref.cstar);
  }
}

TEST_P(CorpusTest, BoundsAreSumsOfEdgeLengths) {
  const TrisectionCertificate cert = load_certificate(path_of(GetParam()));
  const BoundReport r = verify_certificate(cert);
  int l = 0, ls = 0;
  for (std::size_t e = 0; e < 3; ++e) {
    l += static_cast<int>(verify_path(cert.p_paths[e], PathMode::p));
    ls += static_cast<int>(verify_path(cert.cstar_paths[e], PathMode::cstar));
  }
  EXPECT_EQ(r.L_upper, l);
  EXPECT_EQ(r.Lstar_upper, ls);
  EXPECT_LE(r.Lstar_upper, r.L_upper);
}

TEST_P(CorpusTest, EfficientPairsAreExact) {
  const TrisectionCertificate cert = load_certificate(path_of(GetParam()));
  for (std::size_t i = 0; i < 3; ++i) {
    const EfficientPair& p = cert.pairs[i];
    const int len = static_cast<int>(verify_path(p.witness, PathMode::cstar));
    EXPECT_EQ(len, diff_lower_bound(p.first, p.second));
    EXPECT_EQ(len, cert.b - cert.c[i]);
    EXPECT_TRUE(in_dc(p.first, cert.tangles[i]));
    EXPECT_TRUE(in_dc(p.second, cert.tangles[(i + 2) % 3]));
  }
}

// Moving every curve by one braid and composing it into every tangle word
// changes coordinates only.
TEST_P(CorpusTest, ChangeOfCoordinatesKeepsBounds) {
  const TrisectionCertificate cert = load_certificate(path_of(GetParam()));
  const BraidWord beta = BraidWord::parse("s2 s3^-1");
  auto move = [&](const PantsDecomposition& p) {
    std::vector<Curve> cs;
    for (const Curve& c : p.curves()) cs.push_back(act(beta, c));
    return PantsDecomposition(p.config(), cs);
  };
  auto move_path = [&](const MovePath& m) {
    MovePath out{{}, m.mode};
    for (const PantsDecomposition& v : m.vertices) out.vertices.push_back(move(v));
    return out;
  };
  TrisectionCertificate moved = cert;
  for (std::size_t t = 0; t < 3; ++t) {
    std::vector<Generator> w = beta.letters();
    for (const Generator& g : cert.tangles[t].word().letters()) w.push_back(g);
    moved.tangles[t] = TanglePresentation(cert.b, BraidWord(w));
    moved.pairs[t].first = move(cert.pairs[t].first);
    moved.pairs[t].second = move(cert.pairs[t].second);
    moved.pairs[t].witness = move_path(cert.pairs[t].witness);
    moved.p_paths[t] = move_path(cert.p_paths[t]);
    moved.cstar_paths[t] = move_path(cert.cstar_paths[t]);
  }
  const BoundReport a = verify_certificate(cert);
  const BoundReport b = verify_certificate(moved);
  EXPECT_EQ(a.p_lengths, b.p_lengths);
  EXPECT_EQ(a.cstar_lengths, b.cstar_lengths);
  EXPECT_EQ(format_report_text(a), format_report_text(b));
}

TEST_P(CorpusTest, ReportsAreDeterministic) {
  const std::string text = read_file(path_of(GetParam()));
  const std::string one = format_report_text(verify_certificate(parse_certificate(text)));
  const std::string two = format_report_text(verify_certificate(parse_certificate(text)));
  EXPECT_EQ(one, two);
  Document d1, d2;
  d1.sections.push_back(report_section(verify_certificate(parse_certificate(text)), "report"));
  d2.sections.push_back(report_section(verify_certificate(parse_certificate(text)), "report"));
  EXPECT_EQ(serialize_document(d1), serialize_document(d2));
}

INSTANTIATE_TEST_SUITE_P(Nine, CorpusTest, ::testing::ValuesIn(references()),
                         [](const ::testing::TestParamInfo<Reference>& info) {
                           std::string name = "c" + info.param.file;
                           for (char& ch : name) {
                             if (!std::isalnum(static_cast<unsigned char>(ch))) ch = '_';
                           }
                           return name + "_" + std::to_string(info.index);
                         });

TEST(Corpus, TableMatchesPublishedRows) {
  std::vector<BoundReport> reports;
  for (const Reference& ref : references()) reports.push_back(verify_certificate(load_certificate(path_of(ref))));
  const auto cols = table_report(reports);
  ASSERT_EQ(cols.size(), references().size());
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const Reference& ref = references()[k];
    EXPECT_EQ(cols[k].label, ref.label);
    EXPECT_EQ(cols[k].L, ref.table_L);
    EXPECT_EQ(cols[k].Lstar, ref.table_Lstar);
    EXPECT_EQ(cols[k].L_mod3, ref.L % 3);
    EXPECT_EQ(cols[k].Lstar_mod3, ref.Lstar % 3);
    EXPECT_EQ(cols[k].flagged, ref.label == kFlaggedLabel);
  }
  EXPECT_TRUE(table_report({}).empty());
  EXPECT_EQ(format_table({}), "");
}

TEST(Corpus, LowerBoundsForFourTwo) {
  EXPECT_EQ(lemma_lower_bounds(4, 2, true, true), (std::pair<int, int>{15, 12}));
  EXPECT_EQ(lemma_lower_bounds(4, 2, false, true), (std::pair<int, int>{0, 0}));
  EXPECT_THROW(lemma_lower_bounds(4, 5, true, true), Error);
  EXPECT_EQ(render_bound(15, 15), "15");
  EXPECT_EQ(render_bound(15, 16), "15∼16");
  EXPECT_EQ(render_bound(0, 25), "∼25");
}

TEST(Corpus, FlaggedReportShowsBothTotals) {
  const BoundReport r = verify_certificate(load_certificate(KTB_CORPUS_DIR "/7_1_0-2.cert"));
  const std::string text = format_report_text(r);
  EXPECT_NE(text.find("16"), std::string::npos);
  EXPECT_NE(text.find("sum to 13"), std::string::npos);
}

TEST(Corpus, SearchWithTinyCapsFindsNothing) {
  const TrisectionCertificate cert = load_certificate(KTB_CORPUS_DIR "/6_1_01.cert");
  SearchCaps caps;
  caps.max_slope_height = 1;
  caps.max_axis_crossings = 2;
  caps.max_depth = 3;
  try {
    shortest_path_bounded(cert.edge_start(0), cert.edge_end(0), PathMode::p, caps);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::not_found_within_bounds);
  }
}

}  // namespace
