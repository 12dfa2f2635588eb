#pragma once

// Whole-certificate verification and the bound table.

#include <array>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ktb/errors.hpp"
#include "ktb/pants.hpp"
#include "ktb/tangle.hpp"

namespace ktb {

// Edges in the order 12, 23, 31; sector i sits between edges ki and ij.
inline const std::array<const char*, 3> kEdgeNames{{"12", "23", "31"}};

struct EfficientPair {
  PantsDecomposition first;   // p_ij^i, in the disk set of tangle ij
  PantsDecomposition second;  // p_ki^i, in the disk set of tangle ki
  MovePath witness;
};

struct CertificateFlags {
  bool irreducible = false;
  bool unstabilized = false;
  std::optional<int> lemma_c;  // c used for the lower-bound lemma
};

// Bounds claimed for the certificate, checked against what it certifies.
struct StatedBounds {
  std::optional<int> L;
  std::optional<int> Lstar;
  std::optional<std::array<int, 3>> p_lengths;  // per edge 12, 23, 31
  std::optional<std::array<int, 3>> cstar_lengths;

  bool empty() const { return !L && !Lstar && !p_lengths && !cstar_lengths; }
};

struct TrisectionCertificate {
  std::string label;
  int b = 0;
  std::array<int, 3> c{};
  CertificateFlags flags;
  StatedBounds stated;
  int order = 0;
  std::array<TanglePresentation, 3> tangles;  // a12, a23, a31
  std::array<EfficientPair, 3> pairs;         // sectors 1, 2, 3
  std::array<MovePath, 3> p_paths;            // edges 12, 23, 31
  std::array<MovePath, 3> cstar_paths;

  // Endpoints of the path along edge e: p_ij^i and p_ij^j.
  const PantsDecomposition& edge_start(std::size_t e) const { return pairs[e].first; }
  const PantsDecomposition& edge_end(std::size_t e) const { return pairs[(e + 1) % 3].second; }
};

struct BoundReport {
  std::string label;
  int b = 0;
  std::array<int, 3> c{};
  std::array<int, 3> p_lengths{};
  std::array<int, 3> cstar_lengths{};
  int L_upper = 0;
  int Lstar_upper = 0;
  int L_lower = 0;
  int Lstar_lower = 0;
  std::optional<int> lemma_c;
  StatedBounds stated;
  std::vector<std::string> notes;

  int L_mod3() const { return L_upper % 3; }
  int Lstar_mod3() const { return Lstar_upper % 3; }
  bool flagged() const { return !notes.empty(); }
};

inline std::pair<int, int> lemma_lower_bounds(int b, int c, bool irreducible, bool unstabilized) {
  if (b < 2 || c < 1 || c > b) {
    fail(ErrorCode::bad_parameters,
         "lower bounds need b >= 2 and 1 <= c <= b, got (" + std::to_string(b) + ", " +
             std::to_string(c) + ")");
  }
  if (!irreducible || !unstabilized) return {0, 0};
  int lstar = 3 * (b + c - 3);
  if (b == 4 && c == 2) lstar = std::max(lstar, 12);
  int l = lstar;
  if (c >= 2) l = std::max(l, 3 * (b + c - 2));
  if (c == 2) l = std::max(l, 3 * (b + 1));
  return {l, lstar};
}

inline void require_same_decomposition(const PantsDecomposition& got,
                                       const PantsDecomposition& want, const std::string& what) {
  if (!(got == want)) fail(ErrorCode::invariant_violation, what + " does not match");
}

inline void verify_efficient_pair(const EfficientPair& pair, const TanglePresentation& t_ij,
                                  const TanglePresentation& t_ki, int b, int c_i) {
  try {
    dc_membership(pair.first, t_ij);
  } catch (const Error& e) {
    fail(e.code(), std::string("first side: ") + e.what());
  }
  try {
    dc_membership(pair.second, t_ki);
  } catch (const Error& e) {
    fail(e.code(), std::string("second side: ") + e.what());
  }
  if (pair.witness.vertices.empty()) fail(ErrorCode::empty_path, "witness path has no vertices");
  require_same_decomposition(pair.witness.vertices.front(), pair.first, "witness start");
  require_same_decomposition(pair.witness.vertices.back(), pair.second, "witness end");
  const int expected = b - c_i;
  const int found = static_cast<int>(verify_path(pair.witness, PathMode::cstar));
  if (found != expected) {
    fail(ErrorCode::length_mismatch, "witness has length " + std::to_string(found) +
                                         ", expected " + std::to_string(expected));
  }
  const int diff = diff_lower_bound(pair.first, pair.second);
  if (diff != expected) {
    fail(ErrorCode::lower_bound_gap, "endpoints differ in " + std::to_string(diff) +
                                         " curves, expected " + std::to_string(expected));
  }
}

namespace detail {

template <class F>
void with_context(const std::string& where, F&& f) {
  try {
    f();
  } catch (const Error& e) {
    fail(e.code(), where + ": " + e.what());
  }
}

}  // namespace detail

inline BoundReport verify_certificate(const TrisectionCertificate& cert) {
  BoundReport r;
  r.label = cert.label;
  r.b = cert.b;
  r.c = cert.c;
  r.stated = cert.stated;
  r.lemma_c = cert.flags.lemma_c;
  for (std::size_t t = 0; t < 3; ++t) {
    if (cert.tangles[t].bridge_number() != cert.b) {
      fail(ErrorCode::config_mismatch, std::string("tangles.a") + kEdgeNames[t] +
                                           ": bridge number differs from meta.b");
    }
    if (cert.c[t] < 1 || cert.c[t] > cert.b) {
      fail(ErrorCode::bad_parameters, "meta.c entries must lie in 1..b");
    }
  }
  for (std::size_t i = 0; i < 3; ++i) {
    const std::size_t ij = i;            // edge starting at sector i
    const std::size_t ki = (i + 2) % 3;  // edge ending at sector i
    detail::with_context("pairs.sector" + std::to_string(i + 1), [&] {
      verify_efficient_pair(cert.pairs[i], cert.tangles[ij], cert.tangles[ki], cert.b, cert.c[i]);
    });
  }
  for (std::size_t e = 0; e < 3; ++e) {
    for (PathMode mode : {PathMode::p, PathMode::cstar}) {
      const MovePath& path = mode == PathMode::p ? cert.p_paths[e] : cert.cstar_paths[e];
      const std::string where =
          std::string("paths.e") + kEdgeNames[e] + "." + path_mode_name(mode);
      detail::with_context(where, [&] {
        if (path.vertices.empty()) fail(ErrorCode::empty_path, "path has no vertices");
        require_same_decomposition(path.vertices.front(), cert.edge_start(e), "path start");
        require_same_decomposition(path.vertices.back(), cert.edge_end(e), "path end");
        const int len = static_cast<int>(verify_path(path, mode));
        (mode == PathMode::p ? r.p_lengths : r.cstar_lengths)[e] = len;
      });
    }
  }
  for (std::size_t e = 0; e < 3; ++e) {
    r.L_upper += r.p_lengths[e];
    r.Lstar_upper += r.cstar_lengths[e];
    if (r.cstar_lengths[e] > r.p_lengths[e]) {
      r.notes.push_back(std::string("edge ") + kEdgeNames[e] +
                        ": Cstar path is longer than the P path");
    }
  }
  if (cert.flags.lemma_c) {
    auto [l, ls] = lemma_lower_bounds(cert.b, *cert.flags.lemma_c, cert.flags.irreducible,
                                      cert.flags.unstabilized);
    r.L_lower = l;
    r.Lstar_lower = ls;
  }
  if (r.L_lower > r.L_upper) r.notes.push_back("L lower bound exceeds the certified upper bound");
  if (r.Lstar_lower > r.Lstar_upper) {
    r.notes.push_back("L* lower bound exceeds the certified upper bound");
  }
  if (cert.stated.L && *cert.stated.L != r.L_upper) {
    r.notes.push_back("stated L bound " + std::to_string(*cert.stated.L) +
                      " differs from certified " + std::to_string(r.L_upper));
  }
  if (cert.stated.Lstar && *cert.stated.Lstar != r.Lstar_upper) {
    r.notes.push_back("stated L* bound " + std::to_string(*cert.stated.Lstar) +
                      " differs from certified " + std::to_string(r.Lstar_upper));
  }
  for (PathMode mode : {PathMode::p, PathMode::cstar}) {
    const bool p = mode == PathMode::p;
    const auto& want = p ? cert.stated.p_lengths : cert.stated.cstar_lengths;
    if (!want) continue;
    const std::array<int, 3>& got = p ? r.p_lengths : r.cstar_lengths;
    for (std::size_t e = 0; e < 3; ++e) {
      if ((*want)[e] != got[e]) {
        r.notes.push_back(std::string("edge ") + kEdgeNames[e] + ": stated " + path_mode_name(mode) +
                          " length " + std::to_string((*want)[e]) + " differs from certified " +
                          std::to_string(got[e]));
      }
    }
    const std::optional<int>& total = p ? cert.stated.L : cert.stated.Lstar;
    const int sum = (*want)[0] + (*want)[1] + (*want)[2];
    if (total && *total != sum) {
      r.notes.push_back(std::string("stated ") + (p ? "L" : "L*") + " bound " + std::to_string(*total) +
                        " differs from its stated edge lengths, which sum to " + std::to_string(sum));
    }
  }
  return r;
}

inline std::string render_bound(int lower, int upper) {
  if (lower == upper) return std::to_string(upper);
  if (lower > 0) return std::to_string(lower) + "∼" + std::to_string(upper);
  return "∼" + std::to_string(upper);
}

struct TableColumn {
  std::string label;
  std::string L;
  std::string Lstar;
  int L_mod3 = 0;
  int Lstar_mod3 = 0;
  bool flagged = false;
};

inline std::vector<TableColumn> table_report(const std::vector<BoundReport>& reports) {
  std::vector<TableColumn> cols;
  for (const BoundReport& r : reports) {
    cols.push_back({r.label, render_bound(r.L_lower, r.L_upper),
                    render_bound(r.Lstar_lower, r.Lstar_upper), r.L_mod3(), r.Lstar_mod3(),
                    r.flagged()});
  }
  return cols;
}

// Display width of a UTF-8 string, counting code points.
inline std::size_t display_width(const std::string& s) {
  std::size_t w = 0;
  for (unsigned char ch : s) w += (ch & 0xC0) != 0x80 ? 1 : 0;
  return w;
}

inline std::string format_table(const std::vector<TableColumn>& cols) {
  if (cols.empty()) return "";
  std::vector<std::array<std::string, 5>> rows;
  rows.push_back({"label", "L", "L*", "L mod 3", "L* mod 3"});
  for (const TableColumn& c : cols) {
    rows.push_back({c.label + (c.flagged ? " (!)" : ""), c.L, c.Lstar, std::to_string(c.L_mod3),
                    std::to_string(c.Lstar_mod3)});
  }
  std::vector<std::size_t> width(rows.size(), 0);
  for (std::size_t j = 0; j < rows.size(); ++j) {
    for (const auto& cell : rows[j]) width[j] = std::max(width[j], display_width(cell));
  }
  std::ostringstream os;
  for (std::size_t line = 0; line < 5; ++line) {
    for (std::size_t j = 0; j < rows.size(); ++j) {
      const std::string& cell = rows[j][line];
      os << cell;
      if (j + 1 < rows.size()) os << std::string(width[j] - display_width(cell) + 2, ' ');
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace ktb
