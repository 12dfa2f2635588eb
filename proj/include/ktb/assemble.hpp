#pragma once

// Turning drawn move sequences into verified paths.  A drawing may show an
// A*-move where a P path needs two A-moves, or change two curves in one
// picture; both are repaired here.  Long paths can then be shortened window
// by window down to a target length.

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ktb/errors.hpp"
#include "ktb/intersection.hpp"
#include "ktb/pants.hpp"
#include "ktb/search.hpp"
#include "ktb/tangle.hpp"

namespace ktb {

struct RepairCaps {
  int max_slope_height = 12;  // for Farey midpoints
};

// Vertices after a, ending with b, such that every step is legal in `mode`.
inline std::optional<std::vector<PantsDecomposition>> legalize_step(const PantsDecomposition& a,
                                                                    const PantsDecomposition& b,
                                                                    PathMode mode,
                                                                    const RepairCaps& caps = {}) {
  const StepInfo info = step_info(a, b);
  if (info.kind == MoveKind::identical) return std::vector<PantsDecomposition>{};
  if (step_allowed(info.kind, mode)) return std::vector<PantsDecomposition>{b};
  if (info.differing == 1 && info.kind == MoveKind::astar_move) {
    std::size_t index = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!b.contains(a.curves()[i])) index = i;
    }
    const Curve* target = nullptr;
    for (const Curve& c : b.curves()) {
      if (!a.contains(c)) target = &c;
    }
    const FourHoledChart chart = four_holed_chart(a.shared_without(index));
    const Slope s = chart_slope(chart, a.curves()[index]);
    const Slope t = chart_slope(chart, *target);
    if (slope_distance(s, t) > 3) return std::nullopt;
    // Determinant 2 or 3: a common Farey neighbour exists.
    for (const Slope& u : slopes_up_to(caps.max_slope_height)) {
      if (slope_distance(u, s) == 1 && slope_distance(u, t) == 1) {
        return std::vector<PantsDecomposition>{a.replace(index, chart_curve(chart, u)), b};
      }
    }
    return std::nullopt;
  }
  if (info.differing == 2) {
    std::vector<std::size_t> out;
    std::vector<Curve> in;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!b.contains(a.curves()[i])) out.push_back(i);
    }
    for (const Curve& c : b.curves()) {
      if (!a.contains(c)) in.push_back(c);
    }
    for (std::size_t x = 0; x < 2; ++x) {
      for (std::size_t y = 0; y < 2; ++y) {
        PantsDecomposition mid;
        try {
          mid = a.replace(out[x], in[y]);
        } catch (const Error&) {
          continue;
        }
        auto first = legalize_step(a, mid, mode, caps);
        auto second = legalize_step(mid, b, mode, caps);
        if (first && second && !first->empty() && !second->empty()) {
          first->insert(first->end(), second->begin(), second->end());
          return first;
        }
      }
    }
  }
  return std::nullopt;
}

struct DrawnStep {
  std::size_t index;  // step from vertex index to index + 1
  StepInfo info;
};

struct LegalizedPath {
  MovePath path;
  std::vector<DrawnStep> repaired;  // drawn steps that were not legal as drawn
};

inline LegalizedPath legalize(const std::vector<PantsDecomposition>& drawn, PathMode mode,
                              const RepairCaps& caps = {}) {
  if (drawn.empty()) fail(ErrorCode::empty_path, "path has no vertices");
  LegalizedPath out;
  out.path.mode = mode;
  out.path.vertices.push_back(drawn.front());
  for (std::size_t i = 0; i + 1 < drawn.size(); ++i) {
    const StepInfo info = step_info(drawn[i], drawn[i + 1]);
    auto step = legalize_step(drawn[i], drawn[i + 1], mode, caps);
    if (!step) {
      fail(ErrorCode::illegal_step, "drawn step " + std::to_string(i) + " (" +
                                        std::to_string(info.differing) +
                                        " curves change) cannot be repaired");
    }
    if (!step_allowed(info.kind, mode) && info.kind != MoveKind::identical) {
      out.repaired.push_back({i, info});
    }
    out.path.vertices.insert(out.path.vertices.end(), step->begin(), step->end());
  }
  verify_path(out.path, mode);
  return out;
}

struct ShortenOptions {
  std::size_t target = 0;  // stop once the path is this short
  int max_window = 8;
  SearchCaps caps;         // max_depth is set per window
  std::function<void(const std::string&)> log;
};

// Replaces windows of the path by shorter searched paths, smallest windows
// first, until the target length is reached or no window improves.  A
// replacement that would undershoot the target is skipped, so the result is
// never shorter than the target.
inline MovePath shorten(const MovePath& path, PathMode mode, const ShortenOptions& opt) {
  MovePath cur = path;
  cur.mode = mode;
  bool changed = true;
  while (changed && cur.length() > opt.target) {
    changed = false;
    const int longest = std::min<int>(opt.max_window, static_cast<int>(cur.length()));
    for (int w = 2; w <= longest && !changed; ++w) {
      for (std::size_t i = 0; i + static_cast<std::size_t>(w) < cur.vertices.size() && !changed; ++i) {
        SearchCaps caps = opt.caps;
        caps.max_depth = w - 1;
        const SearchResult r = search_path_bidirectional(
            cur.vertices[i], cur.vertices[i + static_cast<std::size_t>(w)], mode, caps);
        if (!r.path) continue;
        const std::size_t saving = static_cast<std::size_t>(w) - r.path->length();
        if (cur.length() - saving < opt.target) continue;
        std::vector<PantsDecomposition> v(cur.vertices.begin(),
                                          cur.vertices.begin() + static_cast<std::ptrdiff_t>(i));
        v.insert(v.end(), r.path->vertices.begin(), r.path->vertices.end());
        v.insert(v.end(), cur.vertices.begin() + static_cast<std::ptrdiff_t>(i) + w + 1,
                 cur.vertices.end());
        if (opt.log) {
          opt.log("window of " + std::to_string(w) + " at " + std::to_string(i) + " replaced by " +
                  std::to_string(r.path->length()));
        }
        cur.vertices = std::move(v);
        changed = true;
      }
    }
  }
  verify_path(cur, mode);
  return cur;
}

// Curves compressing or cut for t, obtained as images of round curves under
// the tangle's braid, that are disjoint from every curve in `avoid`.
inline std::vector<Curve> disk_curves_avoiding(const TanglePresentation& t,
                                               const std::vector<Curve>& avoid) {
  const PunctureConfig& config = t.config();
  const int n = config.punctures();
  std::set<Curve> out;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      if (j - i + 1 > n - 2) continue;
      const Curve c = act(t.word(), make_round(config, i, j));
      if (curve_word(c, t).size() > 1) continue;
      bool disjoint = true;
      for (const Curve& a : avoid) {
        if (a == c || geometric_intersection(a, c) != 0) disjoint = false;
      }
      if (disjoint) out.insert(c);
    }
  }
  return {out.begin(), out.end()};
}

}  // namespace ktb
