#pragma once

// SVG pictures of pants decompositions, move paths and tangles.
//
// Punctures sit on a horizontal axis; each curve is drawn from its crossing
// word as a loop of rounded rectangular arcs above and below the axis.  Gap 0
// is drawn left of the first puncture.  Output depends only on the input.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ktb/curve.hpp"
#include "ktb/pants.hpp"
#include "ktb/tangle.hpp"

namespace ktb {

inline const std::array<const char*, 3> kTangleColors{{"#d62728", "#1f4fd6", "#008b8b"}};
inline const char* const kCommonColor = "#ff8c00";
inline const char* const kOtherColor = "#555555";

namespace svg_detail {

constexpr double kUnit = 40.0;       // puncture spacing
constexpr double kLevel = 7.0;       // height added per nesting level
constexpr double kPanelPad = 18.0;

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

struct Point {
  std::size_t curve;
  std::size_t index;  // position in the crossing word
  int gap;
};

// Arc endpoints for one half plane: the arc leaving point (c, i) on that side.
struct Layout {
  std::vector<Point> points;
  std::vector<std::vector<std::size_t>> id;  // [curve][index] -> point
  std::vector<double> x;                     // per point
};

class Drawer {
 public:
  Drawer(int n, const std::vector<Curve>& curves) : n_(n), curves_(curves) {
    lay_.id.resize(curves.size());
    for (std::size_t c = 0; c < curves.size(); ++c) {
      const auto& w = curves[c].crossings();
      for (std::size_t i = 0; i < w.size(); ++i) {
        lay_.id[c].push_back(lay_.points.size());
        lay_.points.push_back({c, i, w[i]});
      }
    }
    place();
  }

  // The curve as an SVG path around an axis at height y0.
  std::string path(std::size_t c, double x0, double y0) const {
    const auto& w = curves_[c].crossings();
    const std::size_t m = w.size();
    std::string d;
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t a = lay_.id[c][i];
      const std::size_t b = lay_.id[c][(i + 1) % m];
      // after a downward crossing (even index) the curve runs below the axis
      const bool below = i % 2 == 0;
      const double h = (below ? 1.0 : -1.0) * height(a, b, below);
      const double xa = x0 + lay_.x[a];
      const double xb = x0 + lay_.x[b];
      const double r = std::min({std::abs(h) / 2, std::abs(xb - xa) / 2, 6.0});
      const double dir = xb > xa ? 1.0 : -1.0;
      const double sy = h > 0 ? 1.0 : -1.0;
      if (i == 0) d += "M" + num(xa) + "," + num(y0);
      d += " V" + num(y0 + h - sy * r);
      d += " Q" + num(xa) + "," + num(y0 + h) + " " + num(xa + dir * r) + "," + num(y0 + h);
      d += " H" + num(xb - dir * r);
      d += " Q" + num(xb) + "," + num(y0 + h) + " " + num(xb) + "," + num(y0 + h - sy * r);
      d += " V" + num(y0);
    }
    return d + " Z";
  }

  double extent() const { return max_height_ + kLevel; }

 private:
  // Other end of the arc leaving point p on the given side.
  std::size_t partner(std::size_t p, bool below) const {
    const Point& pt = lay_.points[p];
    const std::size_t m = curves_[pt.curve].crossings().size();
    // the arc below joins index i to i+1 for even i, and i-1 to i for odd i
    const bool forward = (pt.index % 2 == 0) == below;
    const std::size_t j = forward ? (pt.index + 1) % m : (pt.index + m - 1) % m;
    return lay_.id[pt.curve][j];
  }

  bool left_of(std::size_t p, std::size_t q) const {
    const Point& a = lay_.points[p];
    const Point& b = lay_.points[q];
    const int r = detail::compare_points(curves_[a.curve].crossings(), a.index, curves_[b.curve].crossings(),
                                         b.index, true, n_);
    return r == 0 ? p < q : r < 0;
  }

  void place() {
    std::map<int, std::vector<std::size_t>> by_gap;
    for (std::size_t p = 0; p < lay_.points.size(); ++p) by_gap[lay_.points[p].gap].push_back(p);
    lay_.x.assign(lay_.points.size(), 0.0);
    for (auto& [g, ps] : by_gap) {
      std::stable_sort(ps.begin(), ps.end(),
                       [&](std::size_t p, std::size_t q) { return left_of(p, q); });
      const double centre = (g == 0 ? 0.5 : g + 0.5) * kUnit;
      const double span = std::min(kUnit * 0.7, 6.0 * static_cast<double>(ps.size()));
      for (std::size_t k = 0; k < ps.size(); ++k) {
        const double t = ps.size() == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(ps.size() - 1) - 0.5;
        lay_.x[ps[k]] = centre + t * span;
      }
    }
    // nesting levels per side, innermost arcs lowest
    for (int side = 0; side < 2; ++side) {
      const bool below = side == 0;
      std::vector<std::pair<double, double>> arcs;
      std::set<std::pair<std::size_t, std::size_t>> seen;
      for (std::size_t p = 0; p < lay_.points.size(); ++p) {
        const std::size_t q = partner(p, below);
        const auto key = std::minmax(p, q);
        if (!seen.insert(key).second) continue;
        arcs.emplace_back(std::min(lay_.x[p], lay_.x[q]), std::max(lay_.x[p], lay_.x[q]));
      }
      std::sort(arcs.begin(), arcs.end(), [](const auto& u, const auto& v) {
        return u.second - u.first < v.second - v.first;
      });
      std::vector<int> level(arcs.size(), 1);
      for (std::size_t i = 0; i < arcs.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
          if (arcs[i].first <= arcs[j].first && arcs[j].second <= arcs[i].second) {
            level[i] = std::max(level[i], level[j] + 1);
          }
        }
        levels_[side][arcs[i]] = level[i];
        max_height_ = std::max(max_height_, level[i] * kLevel + 4.0);
      }
    }
  }

  double height(std::size_t a, std::size_t b, bool below) const {
    const auto key = std::make_pair(std::min(lay_.x[a], lay_.x[b]), std::max(lay_.x[a], lay_.x[b]));
    const auto it = levels_[below ? 0 : 1].find(key);
    return (it == levels_[below ? 0 : 1].end() ? 1 : it->second) * kLevel + 4.0;
  }

  int n_;
  std::vector<Curve> curves_;
  Layout lay_;
  std::map<std::pair<double, double>, int> levels_[2];
  double max_height_ = 0.0;
};

struct Panel {
  std::vector<Curve> curves;
  std::vector<std::string> colors;
};

inline std::string panels_svg(int n, const std::vector<Panel>& panels, const std::string& title) {
  std::vector<Drawer> drawers;
  double total = kPanelPad;
  std::vector<double> axis;
  for (const Panel& p : panels) {
    drawers.emplace_back(n, p.curves);
    const double e = drawers.back().extent();
    axis.push_back(total + e);
    total += 2 * e + kPanelPad;
  }
  const double width = (n + 1) * kUnit;
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(width) +
         "\" height=\"" + num(total) + "\" viewBox=\"0 0 " + num(width) + " " + num(total) + "\">\n";
  out += "<title>" + title + "</title>\n";
  for (std::size_t k = 0; k < panels.size(); ++k) {
    const double y = axis[k];
    out += "<g>\n";
    out += "<line x1=\"" + num(0.2 * kUnit) + "\" y1=\"" + num(y) + "\" x2=\"" + num(width - 0.2 * kUnit) +
           "\" y2=\"" + num(y) + "\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";
    for (std::size_t c = 0; c < panels[k].curves.size(); ++c) {
      out += "<path d=\"" + drawers[k].path(c, 0.0, y) + "\" fill=\"none\" stroke=\"" + panels[k].colors[c] +
             "\" stroke-width=\"1.6\"/>\n";
    }
    for (int p = 1; p <= n; ++p) {
      out += "<circle cx=\"" + num(p * kUnit) + "\" cy=\"" + num(y) + "\" r=\"3\" fill=\"black\"/>\n";
    }
    out += "</g>\n";
  }
  return out + "</svg>\n";
}

}  // namespace svg_detail

// Curves compressing or cut for the tangle, if one is given, take its color.
inline std::string render_pants_svg(const PantsDecomposition& p,
                                    const std::optional<std::pair<TanglePresentation, int>>& tangle = {}) {
  svg_detail::Panel panel;
  for (const Curve& c : p.curves()) {
    panel.curves.push_back(c);
    const bool disk = tangle && curve_word(c, tangle->first).size() <= 1;
    panel.colors.push_back(disk ? kTangleColors[static_cast<std::size_t>(tangle->second)] : kOtherColor);
  }
  return svg_detail::panels_svg(p.config().punctures(), {panel}, "pants decomposition");
}

inline std::string render_curve_svg(const Curve& c) {
  svg_detail::Panel panel{{c}, {kOtherColor}};
  return svg_detail::panels_svg(c.config().punctures(), {panel}, "curve");
}

// Two panels; shared curves in the common color, the rest in the colors of
// the tangles the two sides belong to.
inline std::string render_pair_svg(const PantsDecomposition& first, int first_tangle,
                                   const PantsDecomposition& second, int second_tangle) {
  std::vector<svg_detail::Panel> panels(2);
  for (int s = 0; s < 2; ++s) {
    const PantsDecomposition& p = s == 0 ? first : second;
    const PantsDecomposition& o = s == 0 ? second : first;
    const int t = s == 0 ? first_tangle : second_tangle;
    for (const Curve& c : p.curves()) {
      panels[static_cast<std::size_t>(s)].curves.push_back(c);
      panels[static_cast<std::size_t>(s)].colors.push_back(
          o.contains(c) ? kCommonColor : kTangleColors[static_cast<std::size_t>(t)]);
    }
  }
  return svg_detail::panels_svg(first.config().punctures(), panels, "efficient pair");
}

// One panel per vertex.  Curves present in every vertex and compressing or
// cut for the tangle take its color; the others the common color.
inline std::string render_path_svg(const MovePath& path, const TanglePresentation& t, int tangle_index) {
  if (path.vertices.empty()) fail(ErrorCode::empty_path, "path has no vertices");
  std::vector<svg_detail::Panel> panels;
  for (const PantsDecomposition& v : path.vertices) {
    svg_detail::Panel panel;
    for (const Curve& c : v.curves()) {
      bool everywhere = true;
      for (const PantsDecomposition& u : path.vertices) everywhere = everywhere && u.contains(c);
      const bool disk = everywhere && curve_word(c, t).size() <= 1;
      panel.curves.push_back(c);
      panel.colors.push_back(disk ? kTangleColors[static_cast<std::size_t>(tangle_index)] : kCommonColor);
    }
    panels.push_back(std::move(panel));
  }
  return svg_detail::panels_svg(path.vertices.front().config().punctures(), panels,
                                std::string(path_mode_name(path.mode)) + " path");
}

// Strands rise from the punctures through the braid, bottom to top, and are
// closed by the standard caps.  The strand drawn in front is continuous.
inline std::string render_tangle_svg(const TanglePresentation& t, int tangle_index) {
  using svg_detail::num;
  const int n = t.config().punctures();
  const double u = svg_detail::kUnit;
  const auto& letters = t.word().letters();
  const double row = 0.9 * u;
  const double base = (static_cast<double>(letters.size()) + 2.0) * row;
  const double height = base + 0.5 * u;
  const double width = (n + 1) * u;
  const char* color = kTangleColors[static_cast<std::size_t>(tangle_index)];
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(width) +
         "\" height=\"" + num(height) + "\" viewBox=\"0 0 " + num(width) + " " + num(height) + "\">\n";
  out += "<title>tangle</title>\n";
  auto line = [&](double x1, double y1, double x2, double y2) {
    out += "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) + "\" y2=\"" + num(y2) +
           "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
  };
  for (std::size_t i = 0; i < letters.size(); ++i) {
    const double y1 = base - static_cast<double>(i) * row;
    const double y2 = y1 - row;
    const int k = letters[i].index;
    for (int p = 1; p <= n; ++p) {
      if (p != k && p != k + 1) line(p * u, y1, p * u, y2);
    }
    // sign -1: the strand from position k is in front
    const bool left_front = letters[i].sign < 0;
    const double xl = k * u, xr = (k + 1) * u;
    const double gap = 0.18;
    auto broken = [&](double xa, double xb) {
      line(xa, y1, xa + (xb - xa) * (0.5 - gap), y1 - row * (0.5 - gap));
      line(xa + (xb - xa) * (0.5 + gap), y1 - row * (0.5 + gap), xb, y2);
    };
    if (left_front) {
      line(xl, y1, xr, y2);
      broken(xr, xl);
    } else {
      line(xr, y1, xl, y2);
      broken(xl, xr);
    }
  }
  const double top = base - static_cast<double>(letters.size()) * row;
  for (int k = 1; 2 * k <= n; ++k) {
    const double x1 = (2 * k - 1) * u, x2 = 2 * k * u;
    out += "<path d=\"M" + num(x1) + "," + num(top) + " C" + num(x1) + "," + num(top - 0.8 * row) + " " +
           num(x2) + "," + num(top - 0.8 * row) + " " + num(x2) + "," + num(top) + "\" fill=\"none\" stroke=\"" +
           color + "\" stroke-width=\"2\"/>\n";
  }
  out += "<line x1=\"" + num(0.5 * u) + "\" y1=\"" + num(base) + "\" x2=\"" + num(width - 0.5 * u) + "\" y2=\"" +
         num(base) + "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  for (int p = 1; p <= n; ++p) {
    out += "<circle cx=\"" + num(p * u) + "\" cy=\"" + num(base) + "\" r=\"3\" fill=\"black\"/>\n";
  }
  return out + "</svg>\n";
}

}  // namespace ktb
