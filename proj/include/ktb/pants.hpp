#pragma once

// Pants decompositions of the 2b-punctured sphere and moves between them.

#include <algorithm>
#include <string>
#include <vector>

#include "ktb/curve.hpp"
#include "ktb/errors.hpp"
#include "ktb/intersection.hpp"

namespace ktb {

class PantsDecomposition {
 public:
  PantsDecomposition() = default;

  PantsDecomposition(const PunctureConfig& config, std::vector<Curve> curves) {
    const std::size_t want = static_cast<std::size_t>(config.punctures() - 3);
    if (curves.size() != want) {
      fail(ErrorCode::wrong_curve_count, "expected " + std::to_string(want) + " curves, got " +
                                             std::to_string(curves.size()));
    }
    curves_ = MultiCurve(config, std::move(curves));
    check_regions();
  }

  const PunctureConfig& config() const { return curves_.config(); }
  const std::vector<Curve>& curves() const { return curves_.components(); }
  const MultiCurve& multicurve() const { return curves_; }
  std::size_t size() const { return curves_.size(); }

  bool contains(const Curve& c) const {
    return std::binary_search(curves().begin(), curves().end(), c);
  }

  // The decomposition with curves()[index] replaced; validates the result.
  PantsDecomposition replace(std::size_t index, const Curve& c) const {
    std::vector<Curve> cs = curves();
    cs.at(index) = c;
    return PantsDecomposition(config(), std::move(cs));
  }

  // All curves except curves()[index], the boundary of a four-holed piece.
  MultiCurve shared_without(std::size_t index) const {
    std::vector<Curve> cs = curves();
    cs.erase(cs.begin() + static_cast<std::ptrdiff_t>(index));
    return MultiCurve(config(), std::move(cs));
  }

  std::string key() const {
    std::string k;
    for (const Curve& c : curves()) k += c.key() + ";";
    return k;
  }

  bool operator==(const PantsDecomposition& o) const { return curves_ == o.curves_; }
  bool operator<(const PantsDecomposition& o) const { return curves() < o.curves(); }

 private:
  void check_regions() const {
    const int n = config().punctures();
    std::vector<std::vector<int>> sides;
    for (const Curve& c : curves()) sides.push_back(c.partition().inner);
    auto inside = [](const std::vector<int>& small, const std::vector<int>& big) {
      return small.size() < big.size() &&
             std::includes(big.begin(), big.end(), small.begin(), small.end());
    };
    // Region just inside side s, and the outer region (s = -1).
    for (int s = -1; s < static_cast<int>(sides.size()); ++s) {
      std::vector<int> members;
      if (s < 0) {
        for (int p = 1; p <= n; ++p) members.push_back(p);
      } else {
        members = sides[static_cast<std::size_t>(s)];
      }
      int children = 0;
      std::vector<bool> covered(static_cast<std::size_t>(n) + 1, false);
      for (std::size_t t = 0; t < sides.size(); ++t) {
        if (static_cast<int>(t) == s) continue;
        const bool below = s < 0 || inside(sides[t], sides[static_cast<std::size_t>(s)]);
        if (!below) continue;
        bool maximal = true;
        for (std::size_t u = 0; u < sides.size() && maximal; ++u) {
          if (u == t || static_cast<int>(u) == s) continue;
          const bool u_below = s < 0 || inside(sides[u], sides[static_cast<std::size_t>(s)]);
          if (u_below && inside(sides[t], sides[u])) maximal = false;
        }
        if (!maximal) continue;
        ++children;
        for (int p : sides[t]) covered[static_cast<std::size_t>(p)] = true;
      }
      int free_punctures = 0;
      for (int p : members) free_punctures += covered[static_cast<std::size_t>(p)] ? 0 : 1;
      const int boundary = children + free_punctures + (s < 0 ? 0 : 1);
      if (boundary != 3) {
        fail(ErrorCode::bad_region, "complementary region with " + std::to_string(boundary) +
                                        " boundary components");
      }
    }
  }

  MultiCurve curves_;
};

enum class MoveKind { identical, a_move, astar_move, illegal };

inline const char* move_kind_name(MoveKind k) {
  switch (k) {
    case MoveKind::identical: return "Identical";
    case MoveKind::a_move: return "AMove";
    case MoveKind::astar_move: return "AStarMove";
    case MoveKind::illegal: return "Illegal";
  }
  return "?";
}

enum class PathMode { p, cstar };

inline const char* path_mode_name(PathMode m) { return m == PathMode::p ? "P" : "Cstar"; }

inline int diff_lower_bound(const PantsDecomposition& a, const PantsDecomposition& b) {
  require_same_config(a.config(), b.config(), "diff_lower_bound");
  int d = 0;
  for (const Curve& c : a.curves()) d += b.contains(c) ? 0 : 1;
  return d;
}

struct StepInfo {
  MoveKind kind = MoveKind::illegal;
  long long intersection = 0;  // between the exchanged curves
  int differing = 0;
};

inline StepInfo step_info(const PantsDecomposition& a, const PantsDecomposition& b) {
  require_same_config(a.config(), b.config(), "step_kind");
  StepInfo info;
  info.differing = diff_lower_bound(a, b);
  if (info.differing == 0) {
    info.kind = MoveKind::identical;
    return info;
  }
  if (info.differing != 1) return info;
  const Curve* x = nullptr;
  const Curve* y = nullptr;
  for (const Curve& c : a.curves()) {
    if (!b.contains(c)) x = &c;
  }
  for (const Curve& c : b.curves()) {
    if (!a.contains(c)) y = &c;
  }
  info.intersection = geometric_intersection(*x, *y);
  if (info.intersection == 2) {
    info.kind = MoveKind::a_move;
  } else if (info.intersection > 2) {
    info.kind = MoveKind::astar_move;
  }
  return info;
}

inline MoveKind step_kind(const PantsDecomposition& a, const PantsDecomposition& b) {
  return step_info(a, b).kind;
}

inline bool step_allowed(MoveKind k, PathMode mode) {
  if (k == MoveKind::a_move) return true;
  return mode == PathMode::cstar && k == MoveKind::astar_move;
}

struct MovePath {
  std::vector<PantsDecomposition> vertices;
  PathMode mode = PathMode::p;

  std::size_t length() const { return vertices.empty() ? 0 : vertices.size() - 1; }
};

// Checks every step and returns the number of moves.
inline std::size_t verify_path(const MovePath& path, PathMode mode) {
  if (path.vertices.empty()) fail(ErrorCode::empty_path, "path has no vertices");
  for (std::size_t i = 0; i + 1 < path.vertices.size(); ++i) {
    const StepInfo info = step_info(path.vertices[i], path.vertices[i + 1]);
    if (!step_allowed(info.kind, mode)) {
      std::string why;
      if (info.kind == MoveKind::identical) {
        why = "consecutive vertices coincide";
      } else if (info.differing != 1) {
        why = std::to_string(info.differing) + " curves change";
      } else {
        why = "exchanged curves meet " + std::to_string(info.intersection) + " times";
      }
      fail(ErrorCode::illegal_step, "step " + std::to_string(i) + " (" + path_mode_name(mode) +
                                        "): " + why);
    }
  }
  return path.length();
}

}  // namespace ktb
