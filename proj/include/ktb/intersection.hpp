#pragma once

// Geometric intersection numbers and slope charts on four-holed pieces.

#include <array>
#include <map>
#include <mutex>
#include <optional>
#include <numeric>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "ktb/braid.hpp"
#include "ktb/curve.hpp"
#include "ktb/errors.hpp"

namespace ktb {

inline long long geometric_intersection(const Curve& a, const Curve& b) {
  require_same_config(a.config(), b.config(), "geometric_intersection");
  if (a == b) return 0;
  return detail::intersection_count(a.crossings(), b.crossings(), a.config().punctures(), false);
}

inline long long geometric_intersection(const MultiCurve& a, const MultiCurve& b) {
  require_same_config(a.config(), b.config(), "geometric_intersection");
  long long total = 0;
  for (const Curve& x : a.components()) {
    for (const Curve& y : b.components()) total += geometric_intersection(x, y);
  }
  return total;
}

// Reduced fraction p/q with q >= 0; the point at infinity is 1/0.
struct Slope {
  long long p = 0;
  long long q = 1;

  static Slope make(long long p, long long q) {
    if (p == 0 && q == 0) fail(ErrorCode::bad_parameters, "0/0 is not a slope");
    if (q < 0 || (q == 0 && p < 0)) {
      p = -p;
      q = -q;
    }
    const long long g = std::gcd(p < 0 ? -p : p, q);
    return {p / g, q / g};
  }

  long long height() const { return std::max(p < 0 ? -p : p, q); }
  std::string to_string() const { return std::to_string(p) + "/" + std::to_string(q); }

  auto operator<=>(const Slope&) const = default;
};

inline long long slope_distance(const Slope& a, const Slope& b) {
  const long long d = a.p * b.q - a.q * b.p;
  return d < 0 ? -d : d;
}

// Pillowcase coordinates on the four-punctured sphere.  0/1 is round(1,2),
// 1/0 is round(2,3), and 1/1 is the image of round(1,2) under s2.  For
// distinct slopes the intersection number is 2 |ps - qr|.
inline Slope pillowcase_slope(const Curve& c) {
  if (c.config().punctures() != 4) {
    fail(ErrorCode::config_mismatch, "pillowcase slopes need four punctures");
  }
  const auto counts = c.gap_counts();
  const long long m1 = counts[1];
  const long long m0 = counts[0];
  if (counts[1] != counts[3] || counts[0] != counts[2]) {
    fail(ErrorCode::invariant_violation, "unbalanced crossing counts on " + c.key());
  }
  if (m1 == 0) return {0, 1};
  if (m0 == 0) return {1, 0};
  if (std::gcd(m1, m0) != 1) {
    fail(ErrorCode::invariant_violation, "crossing counts not coprime on " + c.key());
  }
  const auto& w = c.crossings();
  int sign = 0;
  for (std::size_t i = 1; i < w.size(); i += 2) {
    const int a = w[i];
    const int b = w[(i + 1) % w.size()];
    const int lo = std::min(a, b);
    const int hi = std::max(a, b);
    if ((lo == 0 && hi == 1) || (lo == 2 && hi == 3)) sign = 1;
    if ((lo == 1 && hi == 2) || (lo == 0 && hi == 3)) sign = -1;
  }
  if (sign == 0) fail(ErrorCode::invariant_violation, "no corner chord on " + c.key());
  return {sign * m1, m0};
}

namespace detail {

class SlopeTable {
 public:
  const Curve& get(const Slope& s) {
    std::lock_guard<std::mutex> lock(mu_);
    extend(s.height());
    auto it = table_.find(s);
    if (it == table_.end()) fail(ErrorCode::invariant_violation, "slope " + s.to_string());
    return it->second;
  }

  static SlopeTable& instance() {
    static SlopeTable t;
    return t;
  }

 private:
  void extend(long long h) {
    if (h <= height_) return;
    const PunctureConfig four(4);
    std::queue<Curve> frontier;
    std::map<Slope, Curve> seen;
    const Curve base = make_round(four, 1, 2);
    seen.emplace(pillowcase_slope(base), base);
    frontier.push(base);
    const std::array<Generator, 4> gens{{{1, 1}, {1, -1}, {2, 1}, {2, -1}}};
    while (!frontier.empty()) {
      Curve c = frontier.front();
      frontier.pop();
      for (const Generator& g : gens) {
        Curve d = act(BraidWord({g}), c);
        Slope s = pillowcase_slope(d);
        if (s.height() > h || seen.count(s)) continue;
        seen.emplace(s, d);
        frontier.push(d);
      }
    }
    table_ = std::move(seen);
    height_ = h;
  }

  std::mutex mu_;
  long long height_ = -1;
  std::map<Slope, Curve> table_;
};

}  // namespace detail

inline Curve curve_of_slope(const Slope& s) { return detail::SlopeTable::instance().get(s); }

namespace detail {

inline long long total_length(const std::vector<Word>& ws) {
  long long t = 0;
  for (const Word& w : ws) t += static_cast<long long>(w.size());
  return t;
}

inline std::vector<Word> apply_all(const std::vector<Word>& ws, const Generator& g, int n) {
  std::vector<Word> out;
  out.reserve(ws.size());
  for (const Word& w : ws) out.push_back(apply_generator(w, g, n));
  return out;
}

inline bool all_round(const std::vector<Word>& ws) {
  for (const Word& w : ws) {
    if (w.size() != 2) return false;
  }
  return true;
}

}  // namespace detail

// Complementary regions of a family of disjoint round curves.  Each round
// curve is identified with its inner side, an interval of 1..n-1.
struct RoundRegion {
  // Holes in cyclic order; each is a cyclic interval [first, last] of
  // punctures collapsing to a single boundary component.
  std::vector<std::pair<int, int>> holes;
};

inline std::vector<RoundRegion> round_regions(const std::vector<std::pair<int, int>>& intervals,
                                              int n) {
  std::vector<std::pair<int, int>> iv = intervals;
  // Sort by start, longer first, so parents precede children.
  std::sort(iv.begin(), iv.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second > b.second;
  });
  const int m = static_cast<int>(iv.size());
  std::vector<int> parent(static_cast<std::size_t>(m), -1);
  for (int i = 0; i < m; ++i) {
    for (int j = i - 1; j >= 0; --j) {
      if (iv[static_cast<std::size_t>(j)].first <= iv[static_cast<std::size_t>(i)].first &&
          iv[static_cast<std::size_t>(i)].second <= iv[static_cast<std::size_t>(j)].second) {
        parent[static_cast<std::size_t>(i)] = j;
        break;
      }
    }
  }
  std::vector<RoundRegion> regions;
  // region r = -1 is the outer one; region i lies just inside interval i.
  for (int r = -1; r < m; ++r) {
    const int lo = r < 0 ? 1 : iv[static_cast<std::size_t>(r)].first;
    const int hi = r < 0 ? n : iv[static_cast<std::size_t>(r)].second;
    std::vector<std::pair<int, int>> holes;
    int p = lo;
    while (p <= hi) {
      int child = -1;
      for (int i = 0; i < m; ++i) {
        if (parent[static_cast<std::size_t>(i)] == r && iv[static_cast<std::size_t>(i)].first == p) {
          child = i;
          break;
        }
      }
      if (child >= 0) {
        holes.push_back(iv[static_cast<std::size_t>(child)]);
        p = iv[static_cast<std::size_t>(child)].second + 1;
      } else {
        holes.emplace_back(p, p);
        ++p;
      }
    }
    if (r >= 0) {
      // The outside of interval r, as a cyclic interval.
      holes.emplace_back(hi + 1, lo - 1 == 0 ? n : lo - 1);
    }
    regions.push_back({std::move(holes)});
  }
  return regions;
}

inline std::pair<int, int> inner_interval(const Curve& round_curve) {
  Partition p = round_curve.partition();
  return {p.inner.front(), p.inner.back()};
}

namespace detail {

// Greedy descent on crossing count for one curve, restricted to the given
// generators, with a bounded best-first search on plateaus.  Returns the
// generators in order of application.
inline std::vector<Generator> straighten_one(Word w, const std::vector<Generator>& gens, int n) {
  std::vector<Generator> applied;
  while (w.size() > 2) {
    const std::size_t len = w.size();
    std::optional<std::size_t> best;
    std::size_t best_len = len;
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
      const std::size_t l = apply_generator(w, gens[gi], n).size();
      if (l < best_len) {
        best_len = l;
        best = gi;
      }
    }
    if (best) {
      w = apply_generator(w, gens[*best], n);
      applied.push_back(gens[*best]);
      continue;
    }
    struct Node {
      Word word;
      std::size_t parent;
      std::size_t gen;
    };
    std::vector<Node> nodes{{w, 0, 0}};
    std::set<Word> seen{w};
    using Entry = std::pair<std::size_t, std::size_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
    open.push({len, 0});
    std::optional<std::size_t> found;
    while (!found && !open.empty() && nodes.size() < 200000) {
      const std::size_t at = open.top().second;
      open.pop();
      for (std::size_t gi = 0; gi < gens.size() && !found; ++gi) {
        Word next = apply_generator(nodes[at].word, gens[gi], n);
        if (!seen.insert(next).second) continue;
        const std::size_t l = next.size();
        nodes.push_back({std::move(next), at, gi});
        if (l < len) found = nodes.size() - 1;
        open.push({l, nodes.size() - 1});
      }
    }
    if (!found) fail(ErrorCode::invariant_violation, "could not straighten curve");
    std::vector<Generator> path;
    for (std::size_t k = *found; k != 0; k = nodes[k].parent) path.push_back(gens[nodes[k].gen]);
    for (auto it = path.rbegin(); it != path.rend(); ++it) applied.push_back(*it);
    w = nodes[*found].word;
  }
  return applied;
}

}  // namespace detail

// A braid phi such that act(phi, m) consists of round curves.  Curves are
// made round one at a time: a curve lying in a complementary region of the
// round components is straightened in the sphere obtained by collapsing each
// hole of that region to a puncture, and the resulting half-twists are lifted
// to block exchanges, which keep every round component round.
inline BraidWord straighten(const MultiCurve& m) {
  const int n = m.config().punctures();
  std::vector<detail::Word> cur;
  for (const Curve& c : m.components()) cur.push_back(c.crossings());
  std::vector<Generator> applied;  // in order of application
  auto round_count = [&] {
    std::size_t r = 0;
    for (const detail::Word& w : cur) r += w.size() == 2 ? 1 : 0;
    return r;
  };
  while (!detail::all_round(cur)) {
    std::vector<std::pair<int, int>> iv;
    for (const detail::Word& w : cur) {
      if (w.size() == 2) iv.push_back(inner_interval(Curve::from_trusted(m.config(), w)));
    }
    const std::size_t before = round_count();
    bool progressed = false;
    for (const RoundRegion& r : round_regions(iv, n)) {
      const int k = static_cast<int>(r.holes.size());
      if (k < 4) continue;
      std::map<int, int> collapse;  // real gap -> collapsed gap
      for (int t = 0; t < k; ++t) {
        collapse[r.holes[static_cast<std::size_t>(t)].second % n] = (t + 1) % k;
      }
      for (const detail::Word& w : cur) {
        if (w.size() == 2) continue;
        std::vector<int> small;
        bool inside = true;
        for (int g : w) {
          const auto it = collapse.find(g);
          if (it == collapse.end()) {
            inside = false;
            break;
          }
          small.push_back(it->second);
        }
        if (!inside) continue;
        const detail::Word reduced = detail::reduce(detail::letters_of(small));
        if (reduced.size() <= 2) continue;
        // The last hole stays put; it holds infinity or puncture n.
        std::vector<Generator> gens;
        for (int t = 1; t <= k - 2; ++t) {
          gens.push_back({t, 1});
          gens.push_back({t, -1});
        }
        std::vector<int> sizes;
        for (const auto& [first, last] : r.holes) sizes.push_back(last - first + 1);
        const int lo = r.holes.front().first;
        for (const Generator& g : detail::straighten_one(reduced, gens, k)) {
          const std::size_t t = static_cast<std::size_t>(g.index);
          int a = lo;
          for (std::size_t u = 0; u + 1 < t; ++u) a += sizes[u];
          const int p = sizes[t - 1];
          const int q = sizes[t];
          for (int i = a + p - 1; i >= a; --i) {
            for (int j = i; j < i + q; ++j) {
              const Generator lifted{j, g.sign};
              cur = detail::apply_all(cur, lifted, n);
              applied.push_back(lifted);
            }
          }
          std::swap(sizes[t - 1], sizes[t]);
        }
        progressed = true;
        break;
      }
      if (progressed) break;
    }
    if (!progressed || round_count() <= before) {
      fail(ErrorCode::invariant_violation, "could not straighten multicurve");
    }
  }
  std::vector<Generator> word(applied.rbegin(), applied.rend());
  return BraidWord(std::move(word));
}


// Coordinates on the unique four-holed complementary piece of a multicurve
// with 2b-4 components.
struct FourHoledChart {
  PunctureConfig config;
  BraidWord straighten;  // act(straighten, shared) is round
  std::array<std::pair<int, int>, 4> holes{};
  std::array<int, 4> collapsed_to_gap{};  // collapsed gap -> gap in straightened coordinates
};

inline FourHoledChart four_holed_chart(const MultiCurve& shared) {
  const int n = shared.config().punctures();
  if (static_cast<int>(shared.size()) != n - 4) {
    fail(ErrorCode::wrong_curve_count, "four-holed chart needs " + std::to_string(n - 4) +
                                           " shared curves, got " + std::to_string(shared.size()));
  }
  FourHoledChart chart;
  chart.config = shared.config();
  chart.straighten = straighten(shared);
  std::vector<std::pair<int, int>> iv;
  const MultiCurve straight = act(chart.straighten, shared);
  for (const Curve& c : straight.components()) iv.push_back(inner_interval(c));
  int found = 0;
  for (const RoundRegion& r : round_regions(iv, n)) {
    if (r.holes.size() == 4) {
      ++found;
      std::size_t a = 0;
      for (std::size_t h = 0; h < 4; ++h) {
        const auto [first, last] = r.holes[h];
        const bool has_one = first <= last ? (first <= 1 && 1 <= last) : true;
        if (has_one) a = h;
      }
      for (std::size_t t = 0; t < 4; ++t) chart.holes[t] = r.holes[(a + t) % 4];
    } else if (r.holes.size() != 3) {
      fail(ErrorCode::bad_region, "complementary region with " + std::to_string(r.holes.size()) +
                                      " boundary components");
    }
  }
  if (found != 1) fail(ErrorCode::bad_region, "no unique four-holed piece");
  for (std::size_t t = 0; t < 4; ++t) {
    // collapsed gap t+1 follows hole t; gap 0 follows the last hole
    chart.collapsed_to_gap[(t + 1) % 4] = chart.holes[t].second % n;
  }
  return chart;
}

inline Slope chart_slope(const FourHoledChart& chart, const Curve& c) {
  const int n = chart.config.punctures();
  const Curve moved = act(chart.straighten, c);
  std::vector<int> collapsed;
  for (int g : moved.crossings()) {
    int idx = -1;
    for (int t = 0; t < 4; ++t) {
      if (chart.collapsed_to_gap[static_cast<std::size_t>(t)] == g) idx = t;
    }
    if (idx < 0) {
      fail(ErrorCode::not_in_four_holed_piece,
           "curve crosses gap " + std::to_string(g) + " inside a hole");
    }
    collapsed.push_back(idx);
  }
  (void)n;
  try {
    return pillowcase_slope(Curve::from_word(PunctureConfig(4), collapsed));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::inessential_curve) {
      fail(ErrorCode::not_in_four_holed_piece, "curve is parallel to a boundary of the piece");
    }
    throw;
  }
}

inline Curve chart_curve(const FourHoledChart& chart, const Slope& s) {
  const Curve small = curve_of_slope(s);
  std::vector<int> expanded;
  for (int g : small.crossings()) expanded.push_back(chart.collapsed_to_gap[static_cast<std::size_t>(g)]);
  const Curve straight = Curve::from_trusted(chart.config, detail::reduce(detail::letters_of(expanded)));
  return act(chart.straighten.inverse(), straight);
}

inline void require_disjoint(const Curve& c, const MultiCurve& shared) {
  require_same_config(c.config(), shared.config(), "slope_in_cut_surface");
  for (const Curve& s : shared.components()) {
    if (s == c) fail(ErrorCode::not_in_four_holed_piece, "curve is one of the shared curves");
    if (geometric_intersection(s, c) != 0) {
      fail(ErrorCode::not_disjoint_from_shared, "curve meets shared curve " + s.key());
    }
  }
}

inline Slope slope_in_cut_surface(const Curve& c, const MultiCurve& shared) {
  require_disjoint(c, shared);
  return chart_slope(four_holed_chart(shared), c);
}

}  // namespace ktb
