#pragma once

// Trivial tangles: the image of the standard bridge tangle, whose k-th arc
// joins punctures 2k-1 and 2k, under a braid word.
//
// A vertical half-disc above the axis contains the standard arcs; cutting it
// along them leaves one region per arc plus the outer one, and the complement
// of the tangle has free fundamental group on the arc regions.  A curve
// crossing gap 2k-1 downward passes through the region under arc k and reads
// the meridian x_k; crossings of other gaps pass through the outer region and
// read nothing.  By Dehn's lemma a simple curve is compressing iff its word is
// trivial, and cut iff it is conjugate to a meridian.

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "ktb/braid.hpp"
#include "ktb/curve.hpp"
#include "ktb/errors.hpp"
#include "ktb/pants.hpp"

namespace ktb {

// Letters +k / -k stand for x_k and its inverse.
using FreeWord = std::vector<int>;

namespace detail {

inline FreeWord free_reduce(const FreeWord& w) {
  FreeWord st;
  for (int x : w) {
    if (!st.empty() && st.back() == -x) {
      st.pop_back();
    } else {
      st.push_back(x);
    }
  }
  return st;
}

inline FreeWord cyclic_reduce(const FreeWord& w) {
  FreeWord r = free_reduce(w);
  std::size_t lo = 0, hi = r.size();
  while (hi - lo >= 2 && r[lo] == -r[hi - 1]) {
    ++lo;
    --hi;
  }
  return FreeWord(r.begin() + static_cast<std::ptrdiff_t>(lo),
                  r.begin() + static_cast<std::ptrdiff_t>(hi));
}

// Least rotation of the word or of its inverse.
inline FreeWord normalize_conjugacy(const FreeWord& w) {
  if (w.empty()) return w;
  FreeWord inv;
  for (auto it = w.rbegin(); it != w.rend(); ++it) inv.push_back(-*it);
  FreeWord best = w;
  for (const FreeWord* src : {&w, static_cast<const FreeWord*>(&inv)}) {
    for (std::size_t r = 0; r < src->size(); ++r) {
      FreeWord cand(src->begin() + static_cast<std::ptrdiff_t>(r), src->end());
      cand.insert(cand.end(), src->begin(), src->begin() + static_cast<std::ptrdiff_t>(r));
      best = std::min(best, cand);
    }
  }
  return best;
}

}  // namespace detail

class TanglePresentation {
 public:
  TanglePresentation() = default;

  TanglePresentation(int b, BraidWord word) : config_(2 * b), word_(std::move(word)) {
    word_.check_config(config_);
  }

  const PunctureConfig& config() const { return config_; }
  int bridge_number() const { return config_.bridge_number(); }
  const BraidWord& word() const { return word_; }

  // The curve moved back to the standard tangle.
  Curve pull_back(const Curve& c) const {
    require_same_config(config_, c.config(), "tangle");
    return act(word_.inverse(), c);
  }

  // Punctures joined by each arc, arc k first at index k-1.
  std::vector<std::pair<int, int>> arc_endpoints() const {
    const int n = config_.punctures();
    std::vector<int> at(static_cast<std::size_t>(n) + 1);
    std::iota(at.begin(), at.end(), 0);
    for (const Generator& g : word_.letters()) {
      std::swap(at[static_cast<std::size_t>(g.index)], at[static_cast<std::size_t>(g.index) + 1]);
    }
    std::vector<std::pair<int, int>> out;
    for (int k = 1; k <= n / 2; ++k) {
      const int a = at[static_cast<std::size_t>(2 * k - 1)];
      const int b = at[static_cast<std::size_t>(2 * k)];
      out.emplace_back(std::min(a, b), std::max(a, b));
    }
    return out;
  }

 private:
  PunctureConfig config_;
  BraidWord word_;
};

// Cyclically reduced, orientation-normalised word of c in the meridians.
inline FreeWord curve_word(const Curve& c, const TanglePresentation& t) {
  const Curve pulled = t.pull_back(c);
  FreeWord w;
  const auto& gaps = pulled.crossings();
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    const int g = gaps[i];
    if (g % 2 == 1) {
      const int k = (g + 1) / 2;
      w.push_back(i % 2 == 0 ? k : -k);
    }
  }
  return detail::normalize_conjugacy(detail::cyclic_reduce(w));
}

inline FreeWord curve_word(const MultiCurve& m, const TanglePresentation& t) {
  return curve_word(m.single(), t);
}

inline bool is_compressing(const Curve& c, const TanglePresentation& t) {
  return curve_word(c, t).empty();
}

inline bool is_cut(const Curve& c, const TanglePresentation& t) {
  return curve_word(c, t).size() == 1;
}

inline bool is_reducing(const Curve& c, const TanglePresentation& plus,
                        const TanglePresentation& minus) {
  require_same_config(plus.config(), minus.config(), "is_reducing");
  return is_compressing(c, plus) && is_compressing(c, minus);
}

// Index into t.arc_endpoints() of the arc whose endpoints c separates, or -1
// unless exactly one arc is separated.
inline int pierced_arc(const Curve& c, const TanglePresentation& t) {
  const Partition p = c.partition();
  std::vector<bool> inner(static_cast<std::size_t>(c.config().punctures()) + 1, false);
  for (int x : p.inner) inner[static_cast<std::size_t>(x)] = true;
  const auto arcs = t.arc_endpoints();
  int found = -1;
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    if (inner[static_cast<std::size_t>(arcs[i].first)] !=
        inner[static_cast<std::size_t>(arcs[i].second)]) {
      if (found >= 0) return -1;
      found = static_cast<int>(i);
    }
  }
  return found;
}

// Cut on both sides, with the two pierced arcs on one component of the
// unlink formed by the two tangles.
inline bool is_c_reducing(const Curve& c, const TanglePresentation& plus,
                          const TanglePresentation& minus) {
  require_same_config(plus.config(), minus.config(), "is_c_reducing");
  if (!is_cut(c, plus) || !is_cut(c, minus)) return false;
  const int ap = pierced_arc(c, plus);
  const int am = pierced_arc(c, minus);
  if (ap < 0 || am < 0) return false;
  const int n = c.config().punctures();
  std::vector<int> root(static_cast<std::size_t>(n) + 1);
  std::iota(root.begin(), root.end(), 0);
  auto find = [&](int x) {
    while (root[static_cast<std::size_t>(x)] != x) x = root[static_cast<std::size_t>(x)];
    return x;
  };
  for (const TanglePresentation* t : {&plus, &minus}) {
    for (auto [a, b] : t->arc_endpoints()) root[static_cast<std::size_t>(find(a))] = find(b);
  }
  const auto pa = plus.arc_endpoints()[static_cast<std::size_t>(ap)];
  const auto ma = minus.arc_endpoints()[static_cast<std::size_t>(am)];
  return find(pa.first) == find(ma.first);
}

// Indices of curves that are neither compressing nor cut.
inline std::vector<std::size_t> non_disk_curves(const PantsDecomposition& p,
                                                const TanglePresentation& t) {
  require_same_config(p.config(), t.config(), "dc_membership");
  std::vector<std::size_t> bad;
  for (std::size_t i = 0; i < p.curves().size(); ++i) {
    if (curve_word(p.curves()[i], t).size() > 1) bad.push_back(i);
  }
  return bad;
}

inline bool in_dc(const PantsDecomposition& p, const TanglePresentation& t) {
  return non_disk_curves(p, t).empty();
}

inline void dc_membership(const PantsDecomposition& p, const TanglePresentation& t) {
  const auto bad = non_disk_curves(p, t);
  if (!bad.empty()) {
    std::string list;
    for (std::size_t i : bad) list += (list.empty() ? "" : ", ") + std::to_string(i);
    fail(ErrorCode::not_in_dc, "curves neither compressing nor cut: " + list);
  }
}

}  // namespace ktb
