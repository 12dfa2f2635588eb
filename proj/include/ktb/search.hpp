#pragma once

// Bounded breadth-first search in the pants complex and the dual curve
// complex.

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ktb/errors.hpp"
#include "ktb/intersection.hpp"
#include "ktb/pants.hpp"
#include "ktb/trisection.hpp"

namespace ktb {

struct SearchCaps {
  int max_depth = 6;
  int max_slope_height = 8;
  int max_axis_crossings = 400;
  long long max_states = 200000;

  void validate() const {
    if (max_depth < 0 || max_slope_height < 1 || max_axis_crossings < 2 || max_states < 0) {
      fail(ErrorCode::bad_parameters, "search caps must be positive");
    }
  }
};

struct SearchStats {
  long long explored = 0;    // states expanded
  long long discovered = 0;  // states seen
  int depth_reached = 0;
  bool exhaustive = true;  // false if max_states cut the search short
};

struct SearchResult {
  std::optional<MovePath> path;
  SearchStats stats;
};

inline std::vector<Slope> slopes_up_to(int height) {
  std::vector<Slope> out;
  for (long long q = 0; q <= height; ++q) {
    for (long long p = -height; p <= height; ++p) {
      if (q == 0 && p != 1) continue;
      if (std::gcd(p < 0 ? -p : p, q) != 1) continue;
      out.push_back({p, q});
    }
  }
  std::sort(out.begin(), out.end(), [](const Slope& a, const Slope& b) {
    if (a.height() != b.height()) return a.height() < b.height();
    return a < b;
  });
  return out;
}

inline std::vector<PantsDecomposition> neighbors(const PantsDecomposition& pd, PathMode mode,
                                                 const SearchCaps& caps) {
  std::vector<PantsDecomposition> out;
  if (caps.max_states <= 0) return out;
  const std::vector<Slope> slopes = slopes_up_to(caps.max_slope_height);
  std::set<std::string> seen;
  for (std::size_t i = 0; i < pd.size(); ++i) {
    const MultiCurve shared = pd.shared_without(i);
    const FourHoledChart chart = four_holed_chart(shared);
    const Slope current = chart_slope(chart, pd.curves()[i]);
    for (const Slope& s : slopes) {
      if (s == current) continue;
      const long long det = slope_distance(s, current);
      if (mode == PathMode::p && det != 1) continue;
      const Curve c = chart_curve(chart, s);
      if (c.crossing_count() > caps.max_axis_crossings) continue;
      PantsDecomposition next = pd.replace(i, c);
      if (!seen.insert(next.key()).second) continue;
      const MoveKind k = step_kind(pd, next);
      if (!step_allowed(k, mode)) {
        fail(ErrorCode::invariant_violation, "chart produced a neighbour failing step_kind");
      }
      out.push_back(std::move(next));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

// Generic BFS over states keyed by canonical form.
template <class Expand>
SearchResult bfs(const PantsDecomposition& a, const PantsDecomposition& b, PathMode mode,
                 int max_depth, long long max_states, Expand&& expand) {
  SearchResult res;
  if (a == b) {
    res.path = MovePath{{a}, mode};
    return res;
  }
  std::map<std::string, std::pair<std::string, PantsDecomposition>> parent;
  parent.emplace(a.key(), std::make_pair(std::string(), a));
  std::vector<PantsDecomposition> frontier{a};
  const std::string target = b.key();
  for (int depth = 1; depth <= max_depth && !frontier.empty(); ++depth) {
    std::vector<PantsDecomposition> next;
    for (const PantsDecomposition& cur : frontier) {
      if (res.stats.explored >= max_states) {
        res.stats.exhaustive = false;
        break;
      }
      ++res.stats.explored;
      for (PantsDecomposition& nb : expand(cur)) {
        std::string k = nb.key();
        if (parent.count(k)) continue;
        parent.emplace(k, std::make_pair(cur.key(), nb));
        ++res.stats.discovered;
        if (k == target) {
          MovePath path;
          path.mode = mode;
          std::string at = k;
          while (!at.empty()) {
            const auto& entry = parent.at(at);
            path.vertices.push_back(entry.second);
            at = entry.first;
          }
          std::reverse(path.vertices.begin(), path.vertices.end());
          res.stats.depth_reached = depth;
          res.path = std::move(path);
          return res;
        }
        next.push_back(std::move(nb));
      }
    }
    res.stats.depth_reached = depth;
    if (!res.stats.exhaustive) break;
    frontier = std::move(next);
  }
  return res;
}

// Breadth-first from both ends; the expansion must be symmetric.  Grows the
// smaller frontier one layer at a time and stops at the first meeting layer.
template <class Expand>
SearchResult bidirectional(const PantsDecomposition& a, const PantsDecomposition& b,
                           PathMode mode, int max_depth, long long max_states, Expand&& expand) {
  SearchResult res;
  if (a == b) {
    res.path = MovePath{{a}, mode};
    return res;
  }
  using Parents = std::map<std::string, std::pair<std::string, PantsDecomposition>>;
  Parents side[2];
  side[0].emplace(a.key(), std::make_pair(std::string(), a));
  side[1].emplace(b.key(), std::make_pair(std::string(), b));
  std::vector<PantsDecomposition> frontier[2] = {{a}, {b}};
  int depth[2] = {0, 0};
  auto trace = [](const Parents& p, std::string at) {
    std::vector<PantsDecomposition> out;
    while (!at.empty()) {
      const auto& entry = p.at(at);
      out.push_back(entry.second);
      at = entry.first;
    }
    return out;
  };
  while (depth[0] + depth[1] < max_depth && !frontier[0].empty() && !frontier[1].empty()) {
    const int s = frontier[0].size() <= frontier[1].size() ? 0 : 1;
    std::vector<PantsDecomposition> next;
    std::string meet;
    for (const PantsDecomposition& cur : frontier[s]) {
      if (res.stats.explored >= max_states) {
        res.stats.exhaustive = false;
        break;
      }
      ++res.stats.explored;
      for (PantsDecomposition& nb : expand(cur)) {
        std::string k = nb.key();
        if (side[s].count(k)) continue;
        side[s].emplace(k, std::make_pair(cur.key(), nb));
        ++res.stats.discovered;
        if (side[1 - s].count(k)) {
          meet = k;
          break;
        }
        next.push_back(std::move(nb));
      }
      if (!meet.empty()) break;
    }
    ++depth[s];
    res.stats.depth_reached = depth[0] + depth[1];
    if (!meet.empty()) {
      std::vector<PantsDecomposition> head = trace(side[0], meet);
      std::reverse(head.begin(), head.end());
      std::vector<PantsDecomposition> tail = trace(side[1], meet);
      MovePath path;
      path.mode = mode;
      path.vertices = std::move(head);
      path.vertices.insert(path.vertices.end(), tail.begin() + 1, tail.end());
      res.path = std::move(path);
      return res;
    }
    if (!res.stats.exhaustive) break;
    frontier[s] = std::move(next);
  }
  return res;
}

}  // namespace detail

inline SearchResult search_path(const PantsDecomposition& a, const PantsDecomposition& b,
                                PathMode mode, const SearchCaps& caps) {
  caps.validate();
  require_same_config(a.config(), b.config(), "shortest_path_bounded");
  return detail::bfs(a, b, mode, caps.max_depth, caps.max_states,
                     [&](const PantsDecomposition& pd) { return neighbors(pd, mode, caps); });
}

// Same result length as search_path, usually with far fewer states.
inline SearchResult search_path_bidirectional(const PantsDecomposition& a,
                                              const PantsDecomposition& b, PathMode mode,
                                              const SearchCaps& caps) {
  caps.validate();
  require_same_config(a.config(), b.config(), "shortest_path_bounded");
  return detail::bidirectional(a, b, mode, caps.max_depth, caps.max_states,
                               [&](const PantsDecomposition& pd) { return neighbors(pd, mode, caps); });
}

inline std::string describe(const SearchStats& s) {
  return "explored " + std::to_string(s.explored) + " states, discovered " +
         std::to_string(s.discovered) + ", depth " + std::to_string(s.depth_reached) +
         (s.exhaustive ? ", exhaustive within caps" : ", heuristic frontier exhausted");
}

inline MovePath shortest_path_bounded(const PantsDecomposition& a, const PantsDecomposition& b,
                                      PathMode mode, const SearchCaps& caps) {
  SearchResult r = search_path(a, b, mode, caps);
  if (!r.path) fail(ErrorCode::not_found_within_bounds, describe(r.stats));
  return *r.path;
}

// Search restricted to decompositions built from a fixed pool of curves.
// Every pair of pool decompositions differing in one curve is a legal step
// once the exchanged curves meet, so this is exact within the pool.
inline SearchResult shortest_path_in_pool(const PantsDecomposition& a, const PantsDecomposition& b,
                                          const std::vector<Curve>& pool_in, PathMode mode,
                                          int max_depth, long long max_states) {
  require_same_config(a.config(), b.config(), "shortest_path_in_pool");
  std::vector<Curve> pool = pool_in;
  for (const Curve& c : a.curves()) pool.push_back(c);
  for (const Curve& c : b.curves()) pool.push_back(c);
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  const std::size_t m = pool.size();
  std::vector<std::vector<long long>> inter(m, std::vector<long long>(m, 0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      inter[i][j] = inter[j][i] = geometric_intersection(pool[i], pool[j]);
    }
  }
  auto index_of = [&](const Curve& c) {
    return static_cast<std::size_t>(std::lower_bound(pool.begin(), pool.end(), c) - pool.begin());
  };
  auto expand = [&](const PantsDecomposition& pd) {
    std::vector<PantsDecomposition> out;
    std::vector<std::size_t> idx;
    for (const Curve& c : pd.curves()) idx.push_back(index_of(c));
    for (std::size_t k = 0; k < idx.size(); ++k) {
      for (std::size_t y = 0; y < m; ++y) {
        if (pd.contains(pool[y])) continue;
        const long long ixy = inter[idx[k]][y];
        if (mode == PathMode::p ? ixy != 2 : ixy < 2) continue;
        bool ok = true;
        for (std::size_t t = 0; t < idx.size() && ok; ++t) {
          if (t != k && inter[idx[t]][y] != 0) ok = false;
        }
        if (!ok) continue;
        try {
          out.push_back(pd.replace(k, pool[y]));
        } catch (const Error&) {
        }
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  return detail::bfs(a, b, mode, max_depth, max_states, expand);
}

struct Improvement {
  std::optional<MovePath> path;  // strictly shorter verified path, if any
  SearchStats stats;
  bool provably_optimal = false;
};

inline Improvement improve_certificate(const TrisectionCertificate& cert, std::size_t edge,
                                       PathMode mode, const SearchCaps& caps) {
  if (edge > 2) fail(ErrorCode::bad_parameters, "edge index must be 0, 1 or 2");
  const MovePath& stored = mode == PathMode::p ? cert.p_paths[edge] : cert.cstar_paths[edge];
  Improvement imp;
  const int len = static_cast<int>(verify_path(stored, mode));
  const PantsDecomposition& a = cert.edge_start(edge);
  const PantsDecomposition& b = cert.edge_end(edge);
  if (len <= diff_lower_bound(a, b)) {
    imp.provably_optimal = true;
    return imp;
  }
  SearchCaps c = caps;
  c.max_depth = std::min(caps.max_depth, len - 1);
  SearchResult r = search_path(a, b, mode, c);
  imp.stats = r.stats;
  if (r.path && r.path->length() < static_cast<std::size_t>(len)) {
    verify_path(*r.path, mode);
    imp.path = r.path;
  }
  return imp;
}

}  // namespace ktb
