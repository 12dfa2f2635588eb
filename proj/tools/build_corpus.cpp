// Builds certificate files from transcribed figures.
//
//   build_corpus --sources corpus/sources.json
//                --transcription corpus/transcription.json --out corpus
//
// For every entry of the sources file: tangles come from the tri-plane
// figure, each column of the move figure is one edge path, and the efficient
// pairs are read off the ends of adjacent columns.  Drawn paths are repaired
// into legal P and Cstar paths and shortened towards the stated edge lengths.
// Columns listed under "rebuild" are not trusted; their disk curves are
// searched for among braid images of round curves and their paths searched
// from scratch.

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ktb/assemble.hpp"
#include "ktb/certificate.hpp"
#include "ktb/search.hpp"
#include "ktb/trisection.hpp"

using json = nlohmann::json;
using namespace ktb;

namespace {

struct Panel {
  PantsDecomposition pd;
  std::vector<Curve> shared;  // orange curves
  std::vector<Curve> disk;    // the coloured ones
};

struct Options {
  SearchCaps caps;
  int window = 8;
};

void log(const std::string& s) { std::cerr << s << std::endl; }

std::map<std::string, json> figures_by_label(const json& tr) {
  std::map<std::string, json> out;
  for (const json& f : tr.at("figures")) out[f.at("label").get<std::string>()] = f;
  return out;
}

std::array<TanglePresentation, 3> read_tangles(const json& fig) {
  std::array<TanglePresentation, 3> t;
  const auto& panels = fig.at("panels");
  if (panels.size() != 3) fail(ErrorCode::parse_error, "tri-plane figure needs three panels");
  for (std::size_t i = 0; i < 3; ++i) {
    const int n = panels[i].at("punctures").get<int>();
    std::vector<Generator> g;
    for (const json& l : panels[i].at("letters")) {
      g.push_back({l.at(0).get<int>(), l.at(1).get<bool>() ? -1 : 1});
    }
    t[i] = TanglePresentation(n / 2, BraidWord(std::move(g)));
  }
  return t;
}

std::vector<std::vector<Panel>> read_columns(const json& fig, const PunctureConfig& config) {
  std::vector<std::vector<Panel>> cols;
  for (const json& col : fig.at("columns")) {
    std::vector<Panel> ps;
    for (const json& p : col) {
      Panel panel;
      std::vector<Curve> all;
      for (const json& c : p.at("curves")) {
        Curve cv = Curve::from_word(config, c.at("word").get<std::vector<int>>());
        (c.at("color").get<std::string>() == "orange" ? panel.shared : panel.disk).push_back(cv);
        all.push_back(cv);
      }
      panel.pd = PantsDecomposition(config, std::move(all));
      ps.push_back(std::move(panel));
    }
    cols.push_back(std::move(ps));
  }
  if (cols.size() != 3) fail(ErrorCode::parse_error, "move figure needs three columns");
  return cols;
}

std::optional<std::array<int, 3>> triple(const json& j, const char* key) {
  if (!j.contains(key)) return std::nullopt;
  return j.at(key).get<std::array<int, 3>>();
}

// Rebuilds column e: the shared curves come from the neighbouring columns,
// the disk curves from the tangle.
std::pair<PantsDecomposition, PantsDecomposition> rebuild_ends(
    std::size_t e, const std::vector<std::vector<Panel>>& cols, const TanglePresentation& t,
    std::vector<std::string>& notes) {
  const Panel& before = cols[(e + 2) % 3].back();
  const Panel& after = cols[(e + 1) % 3].front();
  std::vector<Curve> avoid = before.shared;
  avoid.insert(avoid.end(), after.shared.begin(), after.shared.end());
  const std::vector<Curve> cand = disk_curves_avoiding(t, avoid);
  const std::size_t k = before.disk.size();
  std::vector<std::vector<Curve>> found;
  std::vector<std::size_t> idx(k);
  // all k-subsets of the candidates
  std::function<void(std::size_t, std::size_t)> pick = [&](std::size_t from, std::size_t depth) {
    if (depth == k) {
      std::vector<Curve> s, a = before.shared, b = after.shared;
      for (std::size_t i : idx) s.push_back(cand[i]);
      a.insert(a.end(), s.begin(), s.end());
      b.insert(b.end(), s.begin(), s.end());
      try {
        PantsDecomposition pa(t.config(), a), pb(t.config(), b);
        if (in_dc(pa, t) && in_dc(pb, t)) found.push_back(s);
      } catch (const Error&) {
      }
      return;
    }
    for (std::size_t i = from; i < cand.size(); ++i) {
      idx[depth] = i;
      pick(i + 1, depth + 1);
    }
  };
  pick(0, 0);
  if (found.empty()) fail(ErrorCode::not_found_within_bounds, "no disk curves for rebuilt column");
  std::string names;
  for (const Curve& c : found.front()) names += " " + c.key();
  notes.push_back("column " + std::to_string(e + 1) + " rebuilt: " + std::to_string(cand.size()) +
                  " candidate disk curves, " + std::to_string(found.size()) +
                  " admissible choice(s), using" + names);
  std::vector<Curve> a = before.shared, b = after.shared;
  a.insert(a.end(), found.front().begin(), found.front().end());
  b.insert(b.end(), found.front().begin(), found.front().end());
  return {PantsDecomposition(t.config(), a), PantsDecomposition(t.config(), b)};
}

MovePath searched_path(const PantsDecomposition& a, const PantsDecomposition& b, PathMode mode,
                       int depth, const Options& opt) {
  SearchCaps caps = opt.caps;
  caps.max_depth = depth;
  const SearchResult r = search_path_bidirectional(a, b, mode, caps);
  if (!r.path) fail(ErrorCode::not_found_within_bounds, describe(r.stats));
  return *r.path;
}

MovePath edge_path(const std::vector<PantsDecomposition>& drawn, PathMode mode,
                   std::optional<int> target, const Options& opt, const std::string& what,
                   std::vector<std::string>& notes) {
  LegalizedPath lp = legalize(drawn, mode);
  for (const DrawnStep& s : lp.repaired) {
    notes.push_back(what + ": drawn step " + std::to_string(s.index + 1) + " " +
                    (s.info.differing == 1 ? "is an A*-move (curves meet " +
                                                 std::to_string(s.info.intersection) + " times)"
                                           : "changes " + std::to_string(s.info.differing) + " curves") +
                    ", split");
  }
  const std::size_t drawn_len = lp.path.length();
  if (!target || drawn_len <= static_cast<std::size_t>(*target)) return lp.path;
  ShortenOptions so;
  so.target = static_cast<std::size_t>(*target);
  so.max_window = opt.window;
  so.caps = opt.caps;
  so.log = [&](const std::string& m) { log("    " + what + ": " + m); };
  MovePath p = shorten(lp.path, mode, so);
  notes.push_back(what + ": drawn length " + std::to_string(drawn_len) + " shortened to " +
                  std::to_string(p.length()) + " by local search");
  return p;
}

TrisectionCertificate build(const json& src, const std::map<std::string, json>& figs,
                            const Options& opt, std::vector<std::string>& notes) {
  TrisectionCertificate cert;
  cert.label = src.at("label").get<std::string>();
  cert.order = src.value("order", 0);
  const json& tri = figs.at(src.at("triplane").get<std::string>());
  const json& mv = figs.at(src.at("moves").get<std::string>());
  cert.tangles = read_tangles(tri);
  cert.b = cert.tangles[0].bridge_number();
  const PunctureConfig config(2 * cert.b);
  const auto cols = read_columns(mv, config);

  const json& flags = src.at("flags");
  cert.flags.irreducible = flags.value("irreducible", false);
  cert.flags.unstabilized = flags.value("unstabilized", false);
  if (flags.contains("lemma_c")) cert.flags.lemma_c = flags.at("lemma_c").get<int>();
  const json& st = src.at("stated");
  if (st.contains("L")) cert.stated.L = st.at("L").get<int>();
  if (st.contains("Lstar")) cert.stated.Lstar = st.at("Lstar").get<int>();
  cert.stated.p_lengths = triple(st, "P");
  cert.stated.cstar_lengths = triple(st, "Cstar");

  std::set<std::size_t> rebuild;
  if (src.contains("rebuild")) {
    for (const json& e : src.at("rebuild")) rebuild.insert(e.get<std::size_t>());
  }
  std::array<std::pair<PantsDecomposition, PantsDecomposition>, 3> ends;
  for (std::size_t e = 0; e < 3; ++e) {
    ends[e] = rebuild.count(e) ? rebuild_ends(e, cols, cert.tangles[e], notes)
                               : std::make_pair(cols[e].front().pd, cols[e].back().pd);
  }
  for (std::size_t i = 0; i < 3; ++i) {
    cert.pairs[i].first = ends[i].first;
    cert.pairs[i].second = ends[(i + 2) % 3].second;
    const int diff = diff_lower_bound(cert.pairs[i].first, cert.pairs[i].second);
    cert.c[i] = cert.b - diff;
    std::vector<Curve> pool = cert.pairs[i].first.curves();
    pool.insert(pool.end(), cert.pairs[i].second.curves().begin(), cert.pairs[i].second.curves().end());
    const SearchResult w = shortest_path_in_pool(cert.pairs[i].first, cert.pairs[i].second, pool,
                                                 PathMode::cstar, diff, opt.caps.max_states);
    if (!w.path) fail(ErrorCode::not_found_within_bounds, "no witness for sector " + std::to_string(i + 1));
    cert.pairs[i].witness = *w.path;
  }
  for (std::size_t e = 0; e < 3; ++e) {
    const std::string edge = std::string("edge ") + kEdgeNames[e];
    const auto pt = cert.stated.p_lengths ? std::optional<int>((*cert.stated.p_lengths)[e]) : std::nullopt;
    const auto ct =
        cert.stated.cstar_lengths ? std::optional<int>((*cert.stated.cstar_lengths)[e]) : std::nullopt;
    log("  " + edge);
    if (rebuild.count(e)) {
      if (!pt || !ct) fail(ErrorCode::bad_parameters, "rebuilt columns need stated lengths");
      cert.p_paths[e] = searched_path(ends[e].first, ends[e].second, PathMode::p, *pt, opt);
      cert.cstar_paths[e] = searched_path(ends[e].first, ends[e].second, PathMode::cstar, *ct, opt);
      notes.push_back(edge + ": paths found by search between the rebuilt ends");
      continue;
    }
    std::vector<PantsDecomposition> drawn;
    for (const Panel& p : cols[e]) drawn.push_back(p.pd);
    cert.p_paths[e] = edge_path(drawn, PathMode::p, pt, opt, edge + " P", notes);
    if (ct) {
      cert.cstar_paths[e] = edge_path(drawn, PathMode::cstar, ct, opt, edge + " Cstar", notes);
    } else {
      cert.cstar_paths[e] = cert.p_paths[e];
      cert.cstar_paths[e].mode = PathMode::cstar;
      notes.push_back(edge + ": Cstar path is the P path");
    }
  }
  return cert;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Build certificate files from transcribed figures"};
  std::string sources_path = "corpus/sources.json";
  std::string transcription_path = "corpus/transcription.json";
  std::string out_dir = "corpus";
  std::vector<std::string> only;
  Options opt;
  opt.caps.max_slope_height = 3;
  opt.caps.max_states = 20000;
  app.add_option("--sources", sources_path, "certificate sources");
  app.add_option("--transcription", transcription_path, "output of transcribe_tikz.py");
  app.add_option("--out", out_dir, "directory for the .cert files");
  app.add_option("--only", only, "build only these file stems");
  app.add_option("--height", opt.caps.max_slope_height, "slope height cap for searches");
  app.add_option("--states", opt.caps.max_states, "expanded-state cap per search");
  app.add_option("--window", opt.window, "longest window tried when shortening");
  CLI11_PARSE(app, argc, argv);

  try {
    std::ifstream sin(sources_path), tin(transcription_path);
    if (!sin || !tin) fail(ErrorCode::parse_error, "cannot open the sources or transcription file");
    const json sources = json::parse(sin);
    const auto figs = figures_by_label(json::parse(tin));
    if (sources.value("mirror", "") != "left_over_negative") {
      fail(ErrorCode::bad_parameters, "only the left_over_negative mirror is supported");
    }
    for (const json& src : sources.at("certificates")) {
      const std::string stem = src.at("file").get<std::string>();
      if (!only.empty() && std::find(only.begin(), only.end(), stem) == only.end()) continue;
      const auto t0 = std::chrono::steady_clock::now();
      log(stem);
      std::vector<std::string> notes;
      const TrisectionCertificate cert = build(src, figs, opt, notes);
      const BoundReport r = verify_certificate(cert);
      std::vector<std::string> header{
          "label " + cert.label,
          "tangles from " + src.at("triplane").get<std::string>() + ", paths from " +
              src.at("moves").get<std::string>(),
          "letters with the left strand in front read as inverse generators"};
      for (const std::string& n : notes) header.push_back(n);
      for (std::string& h : header) h = "# " + h;
      std::ofstream out(out_dir + "/" + stem + ".cert");
      out << serialize_certificate(cert, header);
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      log("  L <= " + std::to_string(r.L_upper) + ", L* <= " + std::to_string(r.Lstar_upper) + " (" +
          std::to_string(secs) + " s)");
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
