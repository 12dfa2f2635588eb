#include <gtest/gtest.h>

#include <filesystem>

#include "ktb/certificate.hpp"

using namespace ktb;

namespace {

ErrorCode parse_error_code(const std::string& text) {
  try {
    parse_certificate(text);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "parsed";
  return ErrorCode::invariant_violation;
}

std::vector<std::string> corpus_files() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(KTB_CORPUS_DIR)) {
    if (e.path().extension() == ".cert") out.push_back(e.path().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

const char* kSmall = R"([meta]
label = "toy"
b = 2
c = [1, 1, 1]
flags = {irreducible: false, unstabilized: false}

[tangles]
a12 = tangle(b=2, word="")
a23 = tangle(b=2, word="s2")
a31 = tangle(b=2, word="s2^-1")

[curves]
x = round(1,2)

[pairs]
sector1 = pair({x}, {x}, witness = w)

[paths]
w = path(Cstar, [{x}])
)";

TEST(Document, ValueRoundTrip) {
  for (const char* text : {"round(1, 2)", "braid(s1 s2^-1) * round(2, 3)", "[1, [2, u], {a, b}]",
                           "pair(p, q, witness=w)", "\"quoted text\""}) {
    EXPECT_EQ(to_text(parse_value(text)), text);
  }
}

TEST(Certificate, EveryCorpusFileRoundTripsByteForByte) {
  const auto files = corpus_files();
  ASSERT_EQ(files.size(), 9u);
  for (const std::string& f : files) {
    const std::string text = read_file(f);
    const ParsedCertificate parsed = parse_certificate_text(text);
    EXPECT_EQ(serialize_document(parsed.document), text) << f;
    // re-serializing the resolved certificate is stable as well
    const std::string again = serialize_certificate(parsed.certificate);
    EXPECT_EQ(serialize_certificate(parse_certificate(again)), again) << f;
  }
}

TEST(Certificate, CorpusSixOneHasEightPunctures) {
  const TrisectionCertificate c = load_certificate(KTB_CORPUS_DIR "/6_1_01.cert");
  EXPECT_EQ(c.b, 4);
  EXPECT_EQ(c.pairs[0].first.config().punctures(), 8);
  EXPECT_EQ(c.pairs[0].first.size(), 5u);
}

TEST(Certificate, DanglingNameIsUnresolved) {
  std::string text = kSmall;
  text.replace(text.find("{x}, {x}"), 8, "{x}, {y}");
  EXPECT_EQ(parse_error_code(text), ErrorCode::unresolved_name);
}

TEST(Certificate, InessentialLiteralIsInvariantViolation) {
  std::string text = R"([meta]
label = "bad"
b = 4
c = [2, 2, 2]

[tangles]
a12 = tangle(b=4, word="")
a23 = tangle(b=4, word="")
a31 = tangle(b=4, word="")

[curves]
x = round(1,8)
)";
  EXPECT_EQ(parse_error_code(text), ErrorCode::invariant_violation);
}

TEST(Certificate, SyntaxErrorCarriesLine) {
  try {
    parse_certificate("[meta]\nlabel = \"x\"\nb = [1,\n");
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::parse_error);
    EXPECT_NE(std::string(e.what()).find("line"), std::string::npos) << e.what();
  }
}

TEST(Certificate, ModeTagIsChecked) {
  std::string text = kSmall;
  text.replace(text.find("path(Cstar"), 10, "path(P");
  EXPECT_EQ(parse_error_code(text), ErrorCode::invariant_violation);
}

}  // namespace
