// One PASS/FAIL line per acceptance criterion; exits non-zero if any fails.

#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "corpus_reference.hpp"
#include "ktb/certificate.hpp"
#include "ktb/search.hpp"
#include "negative.hpp"
#include "oracles.hpp"

using namespace ktb;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream why;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) why << what;
    ok = ok && cond;
  }
};

std::string corpus(const std::string& stem) { return std::string(KTB_CORPUS_DIR) + "/" + stem + ".cert"; }

std::string join(const std::array<int, 3>& a) {
  return std::to_string(a[0]) + "+" + std::to_string(a[1]) + "+" + std::to_string(a[2]);
}

std::vector<BoundReport> corpus_reports(Check& c, double* slowest) {
  std::vector<std::string> files;
  for (const auto& e : std::filesystem::directory_iterator(KTB_CORPUS_DIR)) {
    if (e.path().extension() == ".cert") files.push_back(e.path().string());
  }
  c.expect(files.size() == references().size(), "corpus has " + std::to_string(files.size()) + " files; ");
  std::vector<BoundReport> out;
  for (const Reference& ref : references()) {
    const auto t0 = std::chrono::steady_clock::now();
    out.push_back(verify_certificate(load_certificate(corpus(ref.file))));
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    *slowest = std::max(*slowest, s);
  }
  return out;
}

void corpus_reproduction(Check& c, std::string& detail) {
  double slowest = 0.0;
  const std::vector<BoundReport> reports = corpus_reports(c, &slowest);
  const auto cols = table_report(reports);
  for (std::size_t k = 0; k < references().size(); ++k) {
    const Reference& ref = references()[k];
    const BoundReport& r = reports[k];
    c.expect(cols[k].label == ref.label, "label " + cols[k].label + "; ");
    c.expect(cols[k].L == ref.table_L && cols[k].Lstar == ref.table_Lstar,
             ref.label + " table " + cols[k].L + "/" + cols[k].Lstar + "; ");
    if (ref.label == kFlaggedLabel) {
      c.expect(r.flagged(), ref.label + " not flagged; ");
      detail += ref.label + " certifies " + join(r.p_lengths) + "=" + std::to_string(r.L_upper) +
                " (flagged)";
      continue;
    }
    c.expect(r.L_upper == ref.L && r.Lstar_upper == ref.Lstar, ref.label + " totals; ");
    c.expect(r.p_lengths == ref.p, ref.label + " P " + join(r.p_lengths) + "; ");
    c.expect(r.cstar_lengths == ref.cstar.value_or(ref.p), ref.label + " Cstar " + join(r.cstar_lengths) + "; ");
    c.expect(!r.flagged(), ref.label + " flagged; ");
  }
  c.expect(slowest < 10.0, "slowest verification " + std::to_string(slowest) + " s; ");
  std::ostringstream os;
  os.precision(3);
  os << "; slowest verification " << slowest << " s";
  detail += os.str();
}

void lower_bounds(Check& c) {
  c.expect(lemma_lower_bounds(4, 2, true, true) == std::pair<int, int>{15, 12}, "lemma values; ");
  const BoundReport r = verify_certificate(load_certificate(corpus("6_1_01")));
  const auto cols = table_report({r});
  c.expect(r.lemma_c == 2 && r.b == 4, "6_1 is not (4;2); ");
  c.expect(cols[0].L == "15" && cols[0].Lstar == "12", "table renders " + cols[0].L + "/" + cols[0].Lstar + "; ");
}

void farey_oracle(Check& c, std::string& detail) {
  const auto slopes = oracle::fracs(5);
  SearchCaps caps;
  caps.max_slope_height = 5;
  caps.max_depth = 12;
  int pairs = 0;
  for (std::size_t x = 0; x < slopes.size(); ++x) {
    for (std::size_t y = x + 1; y < slopes.size(); y += 2) {
      const PantsDecomposition a(PunctureConfig(4), {curve_of_slope({slopes[x].p, slopes[x].q})});
      const PantsDecomposition b(PunctureConfig(4), {curve_of_slope({slopes[y].p, slopes[y].q})});
      const MovePath p = shortest_path_bounded(a, b, PathMode::p, caps);
      const int want = oracle::farey_distance(slopes[x], slopes[y], 5);
      c.expect(static_cast<int>(p.length()) == want, "distance mismatch; ");
      c.expect(verify_path(p, PathMode::p) == p.length(), "returned path does not verify; ");
      ++pairs;
    }
  }
  c.expect(pairs >= 50, "too few pairs; ");
  detail = std::to_string(pairs) + " slope pairs";
}

void mapping_class_relations(Check& c, std::string& detail) {
  int instances = 0;
  for (int n : {4, 6, 8, 12}) {
    std::mt19937 rng(1000 + n);
    std::vector<Generator> rel;
    for (int i = 1; i < n; ++i) rel.push_back({i, 1});
    for (int i = n - 1; i >= 1; --i) rel.push_back({i, 1});
    for (int it = 0; it < 100; ++it) {
      const Curve cv = act(oracle::random_word(rng, n, 30), oracle::random_round(rng, n));
      const int i = 1 + static_cast<int>(rng() % static_cast<unsigned>(n - 2));
      const int e = rng() % 2 ? 1 : -1;
      c.expect(act(BraidWord({{i, e}, {i + 1, e}, {i, e}}), cv) == act(BraidWord({{i + 1, e}, {i, e}, {i + 1, e}}), cv),
               "braid relation; ");
      int j = 1 + static_cast<int>(rng() % static_cast<unsigned>(n - 1));
      while (std::abs(i - j) < 2 && n > 4) j = 1 + static_cast<int>(rng() % static_cast<unsigned>(n - 1));
      if (std::abs(i - j) >= 2) {
        c.expect(act(BraidWord({{i, 1}, {j, -1}}), cv) == act(BraidWord({{j, -1}, {i, 1}}), cv), "far commutation; ");
      } else {
        // on four punctures only s1 and s3 are far apart
        c.expect(act(BraidWord({{1, 1}, {3, -1}}), cv) == act(BraidWord({{3, -1}, {1, 1}}), cv), "far commutation; ");
      }
      c.expect(act(BraidWord(rel), cv) == cv, "sphere relator; ");
      ++instances;
    }
  }
  detail = std::to_string(instances) + " instances per relation";
}

void intersection_properties(Check& c, std::string& detail) {
  std::mt19937 rng(2000);
  int pairs = 0;
  for (int n : {4, 6, 8}) {
    for (int it = 0; it < 70; ++it) {
      const Curve a = oracle::random_curve(rng, n, 10);
      const Curve b = oracle::random_curve(rng, n, 10);
      const BraidWord w = oracle::random_word(rng, n, 6);
      const long long ab = geometric_intersection(a, b);
      c.expect(ab == geometric_intersection(b, a), "symmetry; ");
      c.expect(ab % 2 == 0, "parity; ");
      c.expect(geometric_intersection(a, a) == 0, "self; ");
      c.expect(geometric_intersection(act(w, a), act(w, b)) == ab, "equivariance; ");
      ++pairs;
    }
  }
  // slope formula against the general count, inside four-holed pieces
  const auto slopes = oracle::fracs(3);
  int slope_pairs = 0;
  for (int n : {4, 6, 8}) {
    for (int it = 0; it < 10; ++it) {
      const BraidWord w = oracle::random_word(rng, n, 5);
      std::vector<Curve> cs;
      for (const Curve& cv : oracle::nested_rounds(n)) cs.push_back(act(w, cv));
      const PantsDecomposition pd(PunctureConfig(n), cs);
      const std::size_t k = rng() % pd.size();
      const FourHoledChart chart = four_holed_chart(pd.shared_without(k));
      for (int j = 0; j < 10; ++j) {
        const auto& f = slopes[rng() % slopes.size()];
        const auto& g = slopes[rng() % slopes.size()];
        if (f == g) continue;
        const long long got = geometric_intersection(chart_curve(chart, {f.p, f.q}), chart_curve(chart, {g.p, g.q}));
        c.expect(got == 2 * oracle::det(f, g), "slope method disagrees; ");
        ++slope_pairs;
      }
    }
  }
  c.expect(pairs >= 200 && slope_pairs >= 200, "too few pairs; ");
  detail = std::to_string(pairs) + " random pairs, " + std::to_string(slope_pairs) + " slope pairs";
}

void tangle_classification(Check& c, std::string& detail) {
  int curves = 0;
  for (int b = 2; b <= 4; ++b) {
    const TanglePresentation t(b, BraidWord{});
    for (int i = 1; i <= 2 * b; ++i) {
      for (int j = i + 1; j <= 2 * b; ++j) {
        if (j - i + 1 > 2 * b - 2) continue;
        const Curve cv = make_round(t.config(), i, j);
        const std::size_t len = oracle::round_meridian_product(i, j).size();
        c.expect(is_compressing(cv, t) == (len == 0) && is_compressing(cv, t) == oracle::union_of_pairs(i, j),
                 "compressing " + std::to_string(i) + ".." + std::to_string(j) + "; ");
        c.expect(is_cut(cv, t) == (len == 1) && is_cut(cv, t) == oracle::pairs_plus_one(i, j),
                 "cut " + std::to_string(i) + ".." + std::to_string(j) + "; ");
        ++curves;
      }
    }
  }
  detail = std::to_string(curves) + " round curves";
}

void efficient_pairs(Check& c, std::string& detail) {
  int pairs = 0;
  for (const Reference& ref : references()) {
    const TrisectionCertificate cert = load_certificate(corpus(ref.file));
    for (std::size_t i = 0; i < 3; ++i) {
      const EfficientPair& p = cert.pairs[i];
      const int len = static_cast<int>(verify_path(p.witness, PathMode::cstar));
      c.expect(len == diff_lower_bound(p.first, p.second) && len == cert.b - cert.c[i],
               ref.label + " sector " + std::to_string(i + 1) + "; ");
      ++pairs;
    }
  }
  detail = std::to_string(pairs) + " pairs";
}

ErrorCode rejection(const TrisectionCertificate& cert) {
  try {
    verify_certificate(cert);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::invariant_violation;
}

void negative_controls(Check& c, std::string& detail) {
  int mutants = 0;
  for (const Reference& ref : references()) {
    const TrisectionCertificate cert = load_certificate(corpus(ref.file));
    c.expect(rejection(negative::twist_one_curve(cert)) == ErrorCode::illegal_step, ref.label + " twist; ");
    c.expect(rejection(negative::merge_two_steps(cert)) == ErrorCode::illegal_step, ref.label + " two-curve step; ");
    c.expect(rejection(negative::move_endpoint_out_of_dc(cert)) == ErrorCode::not_in_dc, ref.label + " endpoint; ");
    mutants += 3;
  }
  c.expect(rejection(load_certificate(corpus("negative/broken"))) == ErrorCode::illegal_step, "broken.cert; ");
  detail = std::to_string(mutants + 1) + " mutants";
}

void mod3_report(Check& c) {
  double slowest = 0.0;
  const std::vector<BoundReport> reports = corpus_reports(c, &slowest);
  const std::string table = format_table(table_report(reports));
  c.expect(table.find("L mod 3") != std::string::npos && table.find("L* mod 3") != std::string::npos,
           "mod 3 rows missing; ");
  for (std::size_t k = 0; k < reports.size(); ++k) {
    const BoundReport& r = reports[k];
    const Reference& ref = references()[k];
    c.expect(r.L_mod3() == r.L_upper % 3 && r.Lstar_mod3() == r.Lstar_upper % 3, r.label + " residue; ");
    c.expect(format_report_text(r).find("mod 3: " + std::to_string(r.L_mod3())) != std::string::npos,
             r.label + " report; ");
    if (ref.label != kFlaggedLabel) {
      c.expect(r.L_mod3() == ref.L % 3 && r.Lstar_mod3() == ref.Lstar % 3, r.label + " published residue; ");
    }
  }
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<void(Check&, std::string&)> run;
  };
  const std::vector<Criterion> criteria{
      {"corpus reproduction", corpus_reproduction},
      {"lower bounds", [](Check& c, std::string&) { lower_bounds(c); }},
      {"Farey oracle", farey_oracle},
      {"mapping-class relations", mapping_class_relations},
      {"intersection properties", intersection_properties},
      {"tangle classification", tangle_classification},
      {"exact efficient pairs", efficient_pairs},
      {"negative controls", negative_controls},
      {"mod-3 report", [](Check& c, std::string&) { mod3_report(c); }},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Check c;
    std::string detail;
    try {
      criteria[k].run(c, detail);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    std::cout << (c.ok ? "PASS" : "FAIL") << " " << k + 1 << " " << criteria[k].name;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    if (!c.ok) std::cout << ": " << c.why.str();
    std::cout << std::endl;
    failed += c.ok ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
