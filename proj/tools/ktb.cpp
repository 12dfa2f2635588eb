// Command-line front end: verify certificates, print the bound table, search
// for shorter edge paths, render SVG, and classify curves against a tangle.
//
// Exit codes: 0 success, 1 verification failure, 2 input error, 3 nothing
// found within the search caps.

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "ktb/certificate.hpp"
#include "ktb/search.hpp"
#include "ktb/svg.hpp"

namespace fs = std::filesystem;
using namespace ktb;

namespace {

enum Exit { ok = 0, verification_failed = 1, input_error = 2, not_found = 3 };

struct Outcome {
  std::string file;
  std::optional<BoundReport> report;
  int order = 0;
  std::string error;
  int code = ok;
};

Outcome verify_file(const std::string& file) {
  Outcome out;
  out.file = file;
  TrisectionCertificate cert;
  try {
    cert = load_certificate(file);
  } catch (const Error& e) {
    out.error = e.what();
    out.code = input_error;
    return out;
  }
  out.order = cert.order;
  try {
    out.report = verify_certificate(cert);
  } catch (const Error& e) {
    out.error = file + ": " + e.what();
    out.code = verification_failed;
  }
  return out;
}

// Results come back in input order whatever the number of workers.
std::vector<Outcome> verify_all(const std::vector<std::string>& files, int jobs) {
  std::vector<Outcome> out(files.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) out[i] = verify_file(files[i]);
  };
  const int n = std::max(1, std::min<int>(jobs, static_cast<int>(files.size())));
  std::vector<std::thread> pool;
  for (int k = 1; k < n; ++k) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();
  return out;
}

Section failure_section(const Outcome& o) {
  Section s;
  s.name = "failure";
  s.entries.push_back({{}, "file", Value::str(o.file), 0});
  s.entries.push_back({{}, "error", Value::str(o.error), 0});
  return s;
}

int worst(const std::vector<Outcome>& outcomes) {
  int code = ok;
  for (const Outcome& o : outcomes) code = std::max(code, o.code);
  return code;
}

std::size_t edge_index(const std::string& name) {
  for (std::size_t e = 0; e < 3; ++e) {
    if (name == kEdgeNames[e]) return e;
  }
  fail(ErrorCode::bad_parameters, "edge must be 12, 23 or 31, got '" + name + "'");
}

PathMode mode_of(const std::string& name) {
  if (name == "P") return PathMode::p;
  if (name == "Cstar") return PathMode::cstar;
  fail(ErrorCode::bad_parameters, "mode must be P or Cstar, got '" + name + "'");
}

Value path_literal(const MovePath& p) {
  std::vector<Value> vs;
  for (const PantsDecomposition& v : p.vertices) {
    std::vector<Value> cs;
    for (const Curve& c : v.curves()) cs.push_back(curve_literal(c));
    vs.push_back(Value::set(std::move(cs)));
  }
  return Value::call("path", {Value::atom(path_mode_name(p.mode)), Value::list(std::move(vs))});
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::parse_error, "cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified upper bounds for Kirby-Thompson invariants of surface-links"};
  app.require_subcommand(1);
  int jobs = 1;
  std::string format = "text";
  app.add_option("--jobs", jobs, "worker threads for verify and table")->check(CLI::PositiveNumber);
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "structured"}));

  std::vector<std::string> verify_files;
  CLI::App* verify = app.add_subcommand("verify", "verify certificates and print their bounds");
  verify->add_option("files", verify_files)->required();

  std::string table_dir;
  CLI::App* table = app.add_subcommand("table", "bound table for every certificate in a directory");
  table->add_option("dir", table_dir)->required();

  std::string search_file, search_edge = "12", search_mode = "P";
  SearchCaps caps;
  CLI::App* search = app.add_subcommand("search", "look for a shorter path along one edge");
  search->add_option("file", search_file)->required();
  search->add_option("--edge", search_edge)->check(CLI::IsMember({"12", "23", "31"}));
  search->add_option("--mode", search_mode)->check(CLI::IsMember({"P", "Cstar"}));
  search->add_option("--depth", caps.max_depth);
  search->add_option("--height", caps.max_slope_height);
  search->add_option("--states", caps.max_states);
  search->add_option("--crossings", caps.max_axis_crossings);

  std::string render_file, render_what = "path", render_out, render_edge = "12", render_mode = "P";
  int render_sector = 1;
  CLI::App* render = app.add_subcommand("render", "draw a pair, a path or a tangle as SVG");
  render->add_option("file", render_file)->required();
  render->add_option("--what", render_what)->check(CLI::IsMember({"pair", "path", "tangle"}));
  render->add_option("--out", render_out)->required();
  render->add_option("--edge", render_edge, "edge for paths and tangles")->check(CLI::IsMember({"12", "23", "31"}));
  render->add_option("--mode", render_mode)->check(CLI::IsMember({"P", "Cstar"}));
  render->add_option("--sector", render_sector)->check(CLI::Range(1, 3));

  std::string check_file, check_curve;
  std::vector<std::string> check_tangles;
  CLI::App* check = app.add_subcommand("tangle-check", "classify a curve against the tangles");
  check->add_option("file", check_file)->required();
  check->add_option("--curve", check_curve, "curve literal or a name from the curves section")->required();
  check->add_option("--tangle", check_tangles, "12, 23 or 31; all three by default")
      ->check(CLI::IsMember({"12", "23", "31"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? ok : input_error;
  }
  const bool structured = format == "structured";

  try {
    if (*verify || *table) {
      std::vector<std::string> files = verify_files;
      if (*table) {
        if (!fs::is_directory(table_dir)) fail(ErrorCode::parse_error, table_dir + " is not a directory");
        for (const auto& entry : fs::directory_iterator(table_dir)) {
          if (entry.path().extension() == ".cert") files.push_back(entry.path().string());
        }
        std::sort(files.begin(), files.end());
      }
      std::vector<Outcome> outcomes = verify_all(files, jobs);
      if (*table) {
        // certificates without an explicit order go last, in file order
        std::stable_sort(outcomes.begin(), outcomes.end(), [](const Outcome& a, const Outcome& b) {
          return (a.order > 0 ? a.order : 1 << 20) < (b.order > 0 ? b.order : 1 << 20);
        });
      }
      for (const Outcome& o : outcomes) {
        if (!o.report) std::cerr << o.error << "\n";
      }
      std::vector<BoundReport> reports;
      for (const Outcome& o : outcomes) {
        if (o.report) reports.push_back(*o.report);
      }
      if (structured) {
        Document doc;
        if (*table) {
          Section s;
          s.name = "table";
          for (const TableColumn& c : table_report(reports)) {
            s.entries.push_back({{}, "column", Value::map({{"label", Value::str(c.label)},
                                                            {"L", Value::str(c.L)},
                                                            {"Lstar", Value::str(c.Lstar)},
                                                            {"L_mod3", Value::atom(std::to_string(c.L_mod3))},
                                                            {"Lstar_mod3", Value::atom(std::to_string(c.Lstar_mod3))},
                                                            {"flagged", Value::atom(c.flagged ? "true" : "false")}}),
                                 0});
          }
          doc.sections.push_back(std::move(s));
        }
        for (const BoundReport& r : reports) doc.sections.push_back(report_section(r, "report"));
        for (const Outcome& o : outcomes) {
          if (!o.report) doc.sections.push_back(failure_section(o));
        }
        std::cout << serialize_document(doc);
      } else if (*table) {
        std::cout << format_table(table_report(reports));
        for (const BoundReport& r : reports) {
          for (const std::string& n : r.notes) std::cout << r.label << ": " << n << "\n";
        }
      } else {
        for (const BoundReport& r : reports) std::cout << format_report_text(r);
      }
      return worst(outcomes);
    }

    if (*search) {
      TrisectionCertificate cert;
      try {
        cert = load_certificate(search_file);
      } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return input_error;
      }
      caps.validate();
      const std::size_t e = edge_index(search_edge);
      const PathMode mode = mode_of(search_mode);
      const MovePath& stored = mode == PathMode::p ? cert.p_paths[e] : cert.cstar_paths[e];
      const Improvement imp = improve_certificate(cert, e, mode, caps);
      const std::string status = imp.provably_optimal ? "optimal" : imp.path ? "improved" : "not-found";
      if (structured) {
        Document doc;
        Section s;
        s.name = "search";
        auto add = [&](std::string k, Value v) { s.entries.push_back({{}, std::move(k), std::move(v), 0}); };
        add("label", Value::str(cert.label));
        add("edge", Value::atom(search_edge));
        add("mode", Value::atom(path_mode_name(mode)));
        add("stored_length", Value::atom(std::to_string(stored.length())));
        add("status", Value::atom(status));
        add("stats", Value::str(describe(imp.stats)));
        if (imp.path) {
          add("length", Value::atom(std::to_string(imp.path->length())));
          add("path", path_literal(*imp.path));
        }
        doc.sections.push_back(std::move(s));
        std::cout << serialize_document(doc);
      } else {
        std::cout << cert.label << " edge " << search_edge << " " << path_mode_name(mode) << ": stored length "
                  << stored.length() << "\n";
        if (imp.provably_optimal) {
          std::cout << "  stored path meets the lower bound from differing curves\n";
        } else if (imp.path) {
          std::cout << "  shorter path of length " << imp.path->length() << " (" << describe(imp.stats) << ")\n";
          std::cout << "  " << to_text(path_literal(*imp.path)) << "\n";
        } else {
          std::cout << "  no shorter path (" << describe(imp.stats) << ")\n";
        }
      }
      return imp.provably_optimal || imp.path ? ok : not_found;
    }

    if (*render) {
      TrisectionCertificate cert;
      try {
        cert = load_certificate(render_file);
      } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return input_error;
      }
      const std::size_t e = edge_index(render_edge);
      std::string svg;
      if (render_what == "pair") {
        // sector i pairs a decomposition for tangle ij with one for tangle ki
        const std::size_t i = static_cast<std::size_t>(render_sector - 1);
        const EfficientPair& p = cert.pairs[i];
        svg = render_pair_svg(p.first, static_cast<int>(i), p.second, static_cast<int>((i + 2) % 3));
      } else if (render_what == "path") {
        const PathMode mode = mode_of(render_mode);
        const MovePath& path = mode == PathMode::p ? cert.p_paths[e] : cert.cstar_paths[e];
        svg = render_path_svg(path, cert.tangles[e], static_cast<int>(e));
      } else {
        svg = render_tangle_svg(cert.tangles[e], static_cast<int>(e));
      }
      write_file(render_out, svg);
      return ok;
    }

    if (*check) {
      ParsedCertificate parsed;
      try {
        parsed = parse_certificate_text(read_file(check_file));
      } catch (const Error& e) {
        std::cerr << check_file << ": " << e.what() << "\n";
        return input_error;
      }
      const TrisectionCertificate& cert = parsed.certificate;
      CurveResolver resolver(cert.tangles[0].config());
      if (const Section* cs = parsed.document.find("curves")) {
        for (const Entry& entry : cs->entries) {
          resolver.define(entry.key, resolver.resolve(entry.value, "curves." + entry.key));
        }
      }
      Curve curve;
      try {
        curve = resolver.resolve(parse_value(check_curve), "--curve");
      } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return input_error;
      }
      if (check_tangles.empty()) check_tangles = {"12", "23", "31"};
      Document doc;
      Section s;
      s.name = "tangle_check";
      s.entries.push_back({{}, "curve", curve_literal(curve), 0});
      for (const std::string& name : check_tangles) {
        const TanglePresentation& t = cert.tangles[edge_index(name)];
        const char* verdict = is_compressing(curve, t) ? "compressing" : is_cut(curve, t) ? "cut" : "neither";
        if (structured) {
          s.entries.push_back({{}, "a" + name, Value::atom(verdict), 0});
        } else {
          std::cout << "a" << name << ": " << verdict << "\n";
        }
      }
      if (structured) {
        doc.sections.push_back(std::move(s));
        std::cout << serialize_document(doc);
      }
      return ok;
    }
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return input_error;
  }
  return ok;
}
