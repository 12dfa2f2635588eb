#pragma once

// Certificate files: sections meta, tangles, curves, pants, pairs, paths.

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ktb/braid.hpp"
#include "ktb/curve.hpp"
#include "ktb/document.hpp"
#include "ktb/errors.hpp"
#include "ktb/pants.hpp"
#include "ktb/tangle.hpp"
#include "ktb/trisection.hpp"

namespace ktb {

// ---- curve literals ------------------------------------------------------

inline Value curve_literal(const Curve& c) {
  if (c.is_round()) {
    const Partition p = c.partition();
    return Value::call("round", {Value::atom(std::to_string(p.inner.front())),
                                 Value::atom(std::to_string(p.inner.back()))});
  }
  std::vector<Value> chords;
  const auto& w = c.crossings();
  for (std::size_t i = 0; i < w.size(); ++i) {
    chords.push_back(Value::list({Value::atom(std::to_string(w[i])), Value::atom(i % 2 == 0 ? "l" : "u")}));
  }
  return Value::call("chords", {Value::list(std::move(chords))});
}

namespace detail {

inline int as_int(const Value& v, const std::string& where) {
  if (!v.is_atom()) fail(ErrorCode::parse_error, where + ": expected an integer");
  try {
    std::size_t used = 0;
    const int x = std::stoi(v.text, &used);
    if (used != v.text.size()) throw std::invalid_argument(v.text);
    return x;
  } catch (const std::logic_error&) {
    fail(ErrorCode::parse_error, where + ": expected an integer, got '" + v.text + "'");
  }
}

inline bool as_bool(const Value& v, const std::string& where) {
  if (v.is_atom() && v.text == "true") return true;
  if (v.is_atom() && v.text == "false") return false;
  fail(ErrorCode::parse_error, where + ": expected true or false");
}

inline std::string as_string(const Value& v, const std::string& where) {
  if (v.kind != Value::Kind::string) fail(ErrorCode::parse_error, where + ": expected a quoted string");
  return v.text;
}

// Invalid curve data inside a certificate is an invariant violation of the
// document, whatever the underlying reason.
template <class F>
auto as_invariant(const std::string& where, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::parse_error || e.code() == ErrorCode::unresolved_name) throw;
    fail(ErrorCode::invariant_violation, where + ": " + e.what());
  }
}

}  // namespace detail

class CurveResolver {
 public:
  explicit CurveResolver(const PunctureConfig& config) : config_(config) {}

  void define(const std::string& name, const Curve& c) { names_[name] = c; }
  bool has(const std::string& name) const { return names_.count(name) > 0; }

  Curve resolve(const Value& v, const std::string& where) const {
    switch (v.kind) {
      case Value::Kind::atom: {
        auto it = names_.find(v.text);
        if (it == names_.end()) fail(ErrorCode::unresolved_name, where + ": curve '" + v.text + "'");
        return it->second;
      }
      case Value::Kind::product: {
        const Value& lhs = v.items[0];
        if (lhs.kind != Value::Kind::call || lhs.text != "braid") {
          fail(ErrorCode::parse_error, where + ": the left factor of '*' must be braid(...)");
        }
        const BraidWord b = BraidWord::parse(lhs.items[0].text);
        const Curve inner = resolve(v.items[1], where);
        return detail::as_invariant(where, [&] { return act(b, inner); });
      }
      case Value::Kind::call: {
        if (v.text == "round") {
          if (v.items.size() != 2 || !v.named.empty()) fail(ErrorCode::parse_error, where + ": round(i,j)");
          const int i = detail::as_int(v.items[0], where);
          const int j = detail::as_int(v.items[1], where);
          return detail::as_invariant(where, [&] { return make_round(config_, i, j); });
        }
        if (v.text == "chords") {
          if (v.items.size() != 1 || v.items[0].kind != Value::Kind::list) {
            fail(ErrorCode::parse_error, where + ": chords([[gap, side], ...])");
          }
          std::vector<std::pair<int, Side>> chords;
          for (const Value& c : v.items[0].items) {
            if (c.kind != Value::Kind::list || c.items.size() != 2 || !c.items[1].is_atom()) {
              fail(ErrorCode::parse_error, where + ": chord entries are [gap, u|l]");
            }
            const int g = detail::as_int(c.items[0], where);
            const std::string& side = c.items[1].text;
            if (side != "u" && side != "l") fail(ErrorCode::parse_error, where + ": side must be u or l");
            chords.emplace_back(g, side == "u" ? Side::upper : Side::lower);
          }
          return detail::as_invariant(where, [&] { return Curve::from_chords(config_, chords); });
        }
        fail(ErrorCode::parse_error, where + ": unknown curve constructor '" + v.text + "'");
      }
      default: fail(ErrorCode::parse_error, where + ": not a curve literal");
    }
  }

 private:
  PunctureConfig config_;
  std::map<std::string, Curve> names_;
};

inline TanglePresentation parse_tangle(const Value& v, const std::string& where) {
  if (v.kind != Value::Kind::call || v.text != "tangle" || !v.items.empty()) {
    fail(ErrorCode::parse_error, where + ": expected tangle(b=..., word=\"...\")");
  }
  const Value* b = v.find("b");
  const Value* word = v.find("word");
  for (const auto& kv : v.named) {
    if (kv.first != "b" && kv.first != "word") {
      fail(ErrorCode::parse_error, where + ": unknown tangle field '" + kv.first + "'");
    }
  }
  if (!b || !word) fail(ErrorCode::parse_error, where + ": tangle needs b and word");
  const int bb = detail::as_int(*b, where + ".b");
  const BraidWord w = BraidWord::parse(detail::as_string(*word, where + ".word"));
  return detail::as_invariant(where, [&] { return TanglePresentation(bb, w); });
}

inline Value tangle_literal(const TanglePresentation& t) {
  std::vector<std::pair<std::string, Value>> named{
      {"b", Value::atom(std::to_string(t.bridge_number()))},
      {"word", Value::str(t.word().to_string())}};
  return Value::call("tangle", {}, std::move(named));
}

// ---- certificates --------------------------------------------------------

struct ParsedCertificate {
  Document document;
  TrisectionCertificate certificate;
};

inline const Section& require_section(const Document& doc, const std::string& name) {
  const Section* s = doc.find(name);
  if (!s) fail(ErrorCode::parse_error, "missing section [" + name + "]");
  return *s;
}

inline const Entry& require_entry(const Section& s, const std::string& key) {
  const Entry* e = s.find(key);
  if (!e) fail(ErrorCode::parse_error, "[" + s.name + "] missing key '" + key + "'");
  return *e;
}

inline TrisectionCertificate resolve_certificate(const Document& doc) {
  TrisectionCertificate cert;
  for (const Section& s : doc.sections) {
    static const std::vector<std::string> known{"meta", "tangles", "curves", "pants", "pairs", "paths"};
    if (std::find(known.begin(), known.end(), s.name) == known.end()) {
      fail(ErrorCode::parse_error, "line " + std::to_string(s.line) + ": unknown section [" + s.name + "]");
    }
  }
  const Section& meta = require_section(doc, "meta");
  for (const Entry& e : meta.entries) {
    const std::string where = "meta." + e.key;
    if (e.key == "label") {
      cert.label = detail::as_string(e.value, where);
    } else if (e.key == "b") {
      cert.b = detail::as_int(e.value, where);
    } else if (e.key == "order") {
      cert.order = detail::as_int(e.value, where);
    } else if (e.key == "c") {
      if (e.value.kind != Value::Kind::list || e.value.items.size() != 3) {
        fail(ErrorCode::parse_error, where + ": expected [c1, c2, c3]");
      }
      for (std::size_t i = 0; i < 3; ++i) cert.c[i] = detail::as_int(e.value.items[i], where);
    } else if (e.key == "flags") {
      if (e.value.kind != Value::Kind::map) fail(ErrorCode::parse_error, where + ": expected a map");
      for (const auto& [k, v] : e.value.named) {
        if (k == "irreducible") {
          cert.flags.irreducible = detail::as_bool(v, where + "." + k);
        } else if (k == "unstabilized") {
          cert.flags.unstabilized = detail::as_bool(v, where + "." + k);
        } else if (k == "lemma_c") {
          cert.flags.lemma_c = detail::as_int(v, where + "." + k);
        } else {
          fail(ErrorCode::parse_error, where + ": unknown flag '" + k + "'");
        }
      }
    } else if (e.key == "stated") {
      if (e.value.kind != Value::Kind::map) fail(ErrorCode::parse_error, where + ": expected a map");
      for (const auto& [k, v] : e.value.named) {
        if (k == "L") {
          cert.stated.L = detail::as_int(v, where + "." + k);
        } else if (k == "Lstar") {
          cert.stated.Lstar = detail::as_int(v, where + "." + k);
        } else if (k == "P" || k == "Cstar") {
          if (v.kind != Value::Kind::list || v.items.size() != 3) {
            fail(ErrorCode::parse_error, where + "." + k + ": expected [e12, e23, e31]");
          }
          std::array<int, 3> a{};
          for (std::size_t i = 0; i < 3; ++i) a[i] = detail::as_int(v.items[i], where + "." + k);
          (k == "P" ? cert.stated.p_lengths : cert.stated.cstar_lengths) = a;
        } else {
          fail(ErrorCode::parse_error, where + ": unknown stated bound '" + k + "'");
        }
      }
    } else {
      fail(ErrorCode::parse_error, "line " + std::to_string(e.line) + ": unknown meta key '" + e.key + "'");
    }
  }
  if (cert.b < 2) fail(ErrorCode::invariant_violation, "meta.b must be at least 2");
  const PunctureConfig config = detail::as_invariant("meta.b", [&] { return PunctureConfig(2 * cert.b); });

  const Section& tangles = require_section(doc, "tangles");
  for (std::size_t t = 0; t < 3; ++t) {
    const std::string key = std::string("a") + kEdgeNames[t];
    cert.tangles[t] = parse_tangle(require_entry(tangles, key).value, "tangles." + key);
  }

  CurveResolver curves(config);
  if (const Section* cs = doc.find("curves")) {
    for (const Entry& e : cs->entries) {
      curves.define(e.key, curves.resolve(e.value, "curves." + e.key));
    }
  }

  std::map<std::string, PantsDecomposition> pants;
  auto make_pants = [&](const Value& v, const std::string& where) -> PantsDecomposition {
    if (v.kind == Value::Kind::atom) {
      auto it = pants.find(v.text);
      if (it == pants.end()) fail(ErrorCode::unresolved_name, where + ": pants decomposition '" + v.text + "'");
      return it->second;
    }
    if (v.kind != Value::Kind::set) fail(ErrorCode::parse_error, where + ": expected {curve, ...}");
    std::vector<Curve> cs;
    for (const Value& item : v.items) cs.push_back(curves.resolve(item, where));
    try {
      return PantsDecomposition(config, std::move(cs));
    } catch (const Error& e) {
      fail(e.code(), where + ": " + e.what());
    }
  };
  if (const Section* ps = doc.find("pants")) {
    for (const Entry& e : ps->entries) pants[e.key] = make_pants(e.value, "pants." + e.key);
  }

  std::map<std::string, MovePath> paths;
  const Section& path_sec = require_section(doc, "paths");
  for (const Entry& e : path_sec.entries) {
    const std::string where = "paths." + e.key;
    const Value& v = e.value;
    if (v.kind != Value::Kind::call || v.text != "path" || v.items.size() != 2 ||
        !v.items[0].is_atom() || v.items[1].kind != Value::Kind::list) {
      fail(ErrorCode::parse_error, where + ": expected path(P|Cstar, [vertex, ...])");
    }
    MovePath p;
    if (v.items[0].text == "P") {
      p.mode = PathMode::p;
    } else if (v.items[0].text == "Cstar") {
      p.mode = PathMode::cstar;
    } else {
      fail(ErrorCode::parse_error, where + ": mode must be P or Cstar");
    }
    for (std::size_t i = 0; i < v.items[1].items.size(); ++i) {
      p.vertices.push_back(make_pants(v.items[1].items[i], where + "[" + std::to_string(i) + "]"));
    }
    paths[e.key] = std::move(p);
  }
  auto find_path = [&](const std::string& name, const std::string& where, PathMode mode) {
    auto it = paths.find(name);
    if (it == paths.end()) fail(ErrorCode::unresolved_name, where + ": path '" + name + "'");
    if (it->second.mode != mode) {
      fail(ErrorCode::invariant_violation, where + ": path '" + name + "' must be tagged " + path_mode_name(mode));
    }
    return it->second;
  };

  const Section& pairs = require_section(doc, "pairs");
  for (std::size_t i = 0; i < 3; ++i) {
    const std::string key = "sector" + std::to_string(i + 1);
    const std::string where = "pairs." + key;
    const Value& v = require_entry(pairs, key).value;
    const Value* w = v.find("witness");
    if (v.kind != Value::Kind::call || v.text != "pair" || v.items.size() != 2 || !w ||
        !w->is_atom() || v.named.size() != 1) {
      fail(ErrorCode::parse_error, where + ": expected pair(first, second, witness=name)");
    }
    cert.pairs[i].first = make_pants(v.items[0], where + ".first");
    cert.pairs[i].second = make_pants(v.items[1], where + ".second");
    cert.pairs[i].witness = find_path(w->text, where + ".witness", PathMode::cstar);
  }
  for (std::size_t e = 0; e < 3; ++e) {
    const std::string base = std::string("e") + kEdgeNames[e];
    cert.p_paths[e] = find_path(base + ".P", "paths", PathMode::p);
    cert.cstar_paths[e] = find_path(base + ".Cstar", "paths", PathMode::cstar);
  }
  return cert;
}

inline ParsedCertificate parse_certificate_text(const std::string& text) {
  ParsedCertificate out;
  out.document = parse_document(text);
  out.certificate = resolve_certificate(out.document);
  return out;
}

inline TrisectionCertificate parse_certificate(const std::string& text) {
  return parse_certificate_text(text).certificate;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::parse_error, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline TrisectionCertificate load_certificate(const std::string& path) {
  try {
    return parse_certificate(read_file(path));
  } catch (const Error& e) {
    fail(e.code(), path + ": " + e.what());
  }
}

// A document for a certificate with every curve named once.  Pants
// decompositions used as pair endpoints are named; other vertices are
// written inline.
inline Document certificate_document(const TrisectionCertificate& cert,
                                     const std::vector<std::string>& header = {}) {
  Document doc;
  Section meta;
  meta.comments = header;
  meta.name = "meta";
  auto add = [](Section& s, std::string key, Value v) { s.entries.push_back({{}, std::move(key), std::move(v), 0}); };
  add(meta, "label", Value::str(cert.label));
  if (cert.order) add(meta, "order", Value::atom(std::to_string(cert.order)));
  add(meta, "b", Value::atom(std::to_string(cert.b)));
  add(meta, "c", Value::list({Value::atom(std::to_string(cert.c[0])), Value::atom(std::to_string(cert.c[1])),
                              Value::atom(std::to_string(cert.c[2]))}));
  std::vector<std::pair<std::string, Value>> flags{
      {"irreducible", Value::atom(cert.flags.irreducible ? "true" : "false")},
      {"unstabilized", Value::atom(cert.flags.unstabilized ? "true" : "false")}};
  if (cert.flags.lemma_c) flags.emplace_back("lemma_c", Value::atom(std::to_string(*cert.flags.lemma_c)));
  add(meta, "flags", Value::map(std::move(flags)));
  if (!cert.stated.empty()) {
    auto ints = [](const std::array<int, 3>& a) {
      return Value::list({Value::atom(std::to_string(a[0])), Value::atom(std::to_string(a[1])),
                          Value::atom(std::to_string(a[2]))});
    };
    std::vector<std::pair<std::string, Value>> st;
    if (cert.stated.L) st.emplace_back("L", Value::atom(std::to_string(*cert.stated.L)));
    if (cert.stated.Lstar) st.emplace_back("Lstar", Value::atom(std::to_string(*cert.stated.Lstar)));
    if (cert.stated.p_lengths) st.emplace_back("P", ints(*cert.stated.p_lengths));
    if (cert.stated.cstar_lengths) st.emplace_back("Cstar", ints(*cert.stated.cstar_lengths));
    add(meta, "stated", Value::map(std::move(st)));
  }
  doc.sections.push_back(std::move(meta));

  Section tangles;
  tangles.name = "tangles";
  for (std::size_t t = 0; t < 3; ++t) add(tangles, std::string("a") + kEdgeNames[t], tangle_literal(cert.tangles[t]));
  doc.sections.push_back(std::move(tangles));

  // Curves named in order of first appearance.
  std::map<Curve, std::string> names;
  Section curves;
  curves.name = "curves";
  auto name_curve = [&](const Curve& c) {
    auto it = names.find(c);
    if (it != names.end()) return it->second;
    std::string n = "c" + std::to_string(names.size() + 1);
    names.emplace(c, n);
    add(curves, n, curve_literal(c));
    return n;
  };
  auto vertex = [&](const PantsDecomposition& p) {
    std::vector<Value> items;
    for (const Curve& c : p.curves()) items.push_back(Value::atom(name_curve(c)));
    return Value::set(std::move(items));
  };
  Section pants;
  pants.name = "pants";
  std::map<std::string, std::string> pants_names;  // key -> name
  auto name_pants = [&](const PantsDecomposition& p, const std::string& n) {
    if (pants_names.count(p.key())) return;
    pants_names[p.key()] = n;
    add(pants, n, vertex(p));
  };
  for (std::size_t i = 0; i < 3; ++i) {
    const std::string s = std::to_string(i + 1);
    const std::size_t ij = i, ki = (i + 2) % 3;
    name_pants(cert.pairs[i].first, std::string("p") + kEdgeNames[ij] + "_" + s);
    name_pants(cert.pairs[i].second, std::string("p") + kEdgeNames[ki] + "_" + s);
  }
  auto vertex_ref = [&](const PantsDecomposition& p) {
    auto it = pants_names.find(p.key());
    return it != pants_names.end() ? Value::atom(it->second) : vertex(p);
  };
  Section paths;
  paths.name = "paths";
  auto path_value = [&](const MovePath& p) {
    std::vector<Value> vs;
    for (const PantsDecomposition& v : p.vertices) vs.push_back(vertex_ref(v));
    return Value::call("path", {Value::atom(path_mode_name(p.mode)), Value::list(std::move(vs))});
  };
  Section pairs;
  pairs.name = "pairs";
  for (std::size_t i = 0; i < 3; ++i) {
    const std::string w = "w" + std::to_string(i + 1);
    add(pairs, "sector" + std::to_string(i + 1),
        Value::call("pair", {vertex_ref(cert.pairs[i].first), vertex_ref(cert.pairs[i].second)},
                    {{"witness", Value::atom(w)}}));
    add(paths, w, path_value(cert.pairs[i].witness));
  }
  for (std::size_t e = 0; e < 3; ++e) {
    add(paths, std::string("e") + kEdgeNames[e] + ".P", path_value(cert.p_paths[e]));
    add(paths, std::string("e") + kEdgeNames[e] + ".Cstar", path_value(cert.cstar_paths[e]));
  }
  doc.sections.push_back(std::move(curves));
  doc.sections.push_back(std::move(pants));
  doc.sections.push_back(std::move(pairs));
  doc.sections.push_back(std::move(paths));
  return doc;
}

inline std::string serialize_certificate(const TrisectionCertificate& cert,
                                         const std::vector<std::string>& header = {}) {
  return serialize_document(certificate_document(cert, header));
}

// ---- reports -------------------------------------------------------------

inline std::string format_report_text(const BoundReport& r) {
  std::ostringstream os;
  os << r.label << " (b=" << r.b << ", c=" << r.c[0] << "," << r.c[1] << "," << r.c[2] << ")\n";
  os << "  P lengths     " << r.p_lengths[0] << " + " << r.p_lengths[1] << " + " << r.p_lengths[2]
     << "  L  <= " << r.L_upper << "  (mod 3: " << r.L_mod3() << ")\n";
  os << "  Cstar lengths " << r.cstar_lengths[0] << " + " << r.cstar_lengths[1] << " + "
     << r.cstar_lengths[2] << "  L* <= " << r.Lstar_upper << "  (mod 3: " << r.Lstar_mod3() << ")\n";
  if (r.lemma_c) {
    os << "  lower bounds (b=" << r.b << ", c=" << *r.lemma_c << "): L >= " << r.L_lower
       << ", L* >= " << r.Lstar_lower << "\n";
  }
  for (const std::string& n : r.notes) os << "  note: " << n << "\n";
  return os.str();
}

inline Section report_section(const BoundReport& r, const std::string& name) {
  Section s;
  s.name = name;
  auto add = [&](std::string k, Value v) { s.entries.push_back({{}, std::move(k), std::move(v), 0}); };
  auto ints = [](const std::array<int, 3>& a) {
    return Value::list({Value::atom(std::to_string(a[0])), Value::atom(std::to_string(a[1])),
                        Value::atom(std::to_string(a[2]))});
  };
  add("label", Value::str(r.label));
  add("b", Value::atom(std::to_string(r.b)));
  add("c", ints(r.c));
  add("p_lengths", ints(r.p_lengths));
  add("cstar_lengths", ints(r.cstar_lengths));
  add("L_upper", Value::atom(std::to_string(r.L_upper)));
  add("Lstar_upper", Value::atom(std::to_string(r.Lstar_upper)));
  add("L_lower", Value::atom(std::to_string(r.L_lower)));
  add("Lstar_lower", Value::atom(std::to_string(r.Lstar_lower)));
  if (r.lemma_c) add("lemma_c", Value::atom(std::to_string(*r.lemma_c)));
  add("L_mod3", Value::atom(std::to_string(r.L_mod3())));
  add("Lstar_mod3", Value::atom(std::to_string(r.Lstar_mod3())));
  std::vector<Value> notes;
  for (const std::string& n : r.notes) notes.push_back(Value::str(n));
  add("notes", Value::list(std::move(notes)));
  return s;
}

}  // namespace ktb
