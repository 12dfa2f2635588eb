#pragma once

// Simple closed curves on the 2b-punctured sphere.
//
// The punctures 1..n sit on an axis circle passing through infinity.  Gap g
// (1 <= g < n) is the axis segment between punctures g and g+1; gap 0 runs
// from puncture n through infinity back to puncture 1.  A closed curve in
// minimal position with the axis is recorded by the cyclic sequence of gaps
// it crosses.  Entry i crosses downward (upper to lower hemisphere) when i is
// even and upward when i is odd, so the chord leaving entry i lies in the
// lower hemisphere exactly when i is even.
//
// Such sequences are reduced cyclic words in the fundamental groupoid of the
// punctured sphere based at one point per hemisphere.  That groupoid is free
// on the downward crossings, so free cyclic reduction produces the unique
// tight representative of a free homotopy class, and a least rotation gives a
// canonical form.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ktb/errors.hpp"

namespace ktb {

enum class Side : std::uint8_t { upper, lower };

class PunctureConfig {
 public:
  PunctureConfig() = default;
  explicit PunctureConfig(int punctures) : n_(punctures) {
    if (punctures < 4 || punctures % 2 != 0) {
      fail(ErrorCode::bad_parameters,
           "puncture count must be even and at least 4, got " + std::to_string(punctures));
    }
  }

  int punctures() const { return n_; }
  int gaps() const { return n_; }
  int bridge_number() const { return n_ / 2; }

  bool operator==(const PunctureConfig&) const = default;

 private:
  int n_ = 4;
};

inline void require_same_config(const PunctureConfig& a, const PunctureConfig& b,
                                const std::string& where) {
  if (!(a == b)) {
    fail(ErrorCode::config_mismatch, where + ": " + std::to_string(a.punctures()) +
                                         " vs " + std::to_string(b.punctures()) + " punctures");
  }
}

// The two sides of a separating curve.  `inner` is the side that does not
// contain puncture n.
struct Partition {
  std::vector<int> inner;
  std::vector<int> outer;

  bool operator==(const Partition&) const = default;
};

namespace detail {

using Word = std::vector<int>;

inline int mod(long long a, long long n) {
  long long r = a % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

struct Letter {
  int gap;
  bool down;
};

// Free cyclic reduction of an alternating crossing sequence.  The result
// starts with a downward crossing.
inline Word reduce(const std::vector<Letter>& letters) {
  std::vector<Letter> st;
  st.reserve(letters.size());
  for (const Letter& l : letters) {
    if (!st.empty() && st.back().gap == l.gap && st.back().down != l.down) {
      st.pop_back();
    } else {
      st.push_back(l);
    }
  }
  std::size_t lo = 0;
  std::size_t hi = st.size();
  while (hi - lo >= 2 && st[lo].gap == st[hi - 1].gap && st[lo].down != st[hi - 1].down) {
    ++lo;
    --hi;
  }
  Word out;
  out.reserve(hi - lo);
  if (hi > lo && !st[lo].down) {
    for (std::size_t i = lo + 1; i < hi; ++i) out.push_back(st[i].gap);
    out.push_back(st[lo].gap);
  } else {
    for (std::size_t i = lo; i < hi; ++i) out.push_back(st[i].gap);
  }
  return out;
}

inline std::vector<Letter> letters_of(const Word& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out.push_back({w[i], i % 2 == 0});
  return out;
}

using PairSeq = std::vector<std::pair<int, int>>;

inline PairSeq pairs_of(const Word& w) {
  PairSeq s;
  s.reserve(w.size() / 2);
  for (std::size_t i = 0; i + 1 < w.size(); i += 2) s.emplace_back(w[i], w[i + 1]);
  return s;
}

inline std::size_t least_rotation(const PairSeq& s) {
  const std::size_t m = s.size();
  std::size_t i = 0, j = 1, k = 0;
  while (i < m && j < m && k < m) {
    const auto& a = s[(i + k) % m];
    const auto& b = s[(j + k) % m];
    if (a == b) {
      ++k;
      continue;
    }
    if (a > b) {
      i += k + 1;
    } else {
      j += k + 1;
    }
    if (i == j) ++j;
    k = 0;
  }
  return std::min(i, j);
}

inline Word rotate_pairs(const PairSeq& s, std::size_t start) {
  Word out;
  out.reserve(2 * s.size());
  for (std::size_t t = 0; t < s.size(); ++t) {
    const auto& p = s[(start + t) % s.size()];
    out.push_back(p.first);
    out.push_back(p.second);
  }
  return out;
}

// Least word among the even rotations of w and of its reversal.  Odd
// rotations would swap the hemisphere convention, so they are excluded.
inline Word canonical_rotation(const Word& w) {
  if (w.empty()) return w;
  PairSeq fwd = pairs_of(w);
  Word rev(w.rbegin(), w.rend());
  PairSeq bwd = pairs_of(rev);
  Word a = rotate_pairs(fwd, least_rotation(fwd));
  Word b = rotate_pairs(bwd, least_rotation(bwd));
  return std::min(a, b);
}

inline bool is_proper_power(const Word& w) {
  PairSeq s = pairs_of(w);
  const std::size_t m = s.size();
  if (m < 2) return false;
  std::vector<std::size_t> pi(m, 0);
  for (std::size_t q = 1; q < m; ++q) {
    std::size_t k = pi[q - 1];
    while (k > 0 && s[q] != s[k]) k = pi[k - 1];
    if (s[q] == s[k]) ++k;
    pi[q] = k;
  }
  const std::size_t period = m - pi[m - 1];
  return period < m && m % period == 0;
}

// Step direction along the sequence when leaving entry i into a hemisphere.
inline int step_direction(std::size_t i, bool upward) {
  const int up = (i % 2 == 0) ? -1 : 1;
  return upward ? up : -up;
}

// Relative position of two crossing points on a common gap, measured in the
// increasing direction of the axis circle.  Both strands are followed into
// the same hemisphere until their gap sequences part.  Returns +1 if (a, i)
// lies further along than (b, j), -1 if it lies before, 0 if the strands never
// part, which only happens for isotopic curves.
inline int compare_points(const Word& a, std::size_t i, const Word& b, std::size_t j, bool upward,
                          int n) {
  const long long la = static_cast<long long>(a.size());
  const long long lb = static_cast<long long>(b.size());
  const int da = step_direction(i, upward);
  const int db = step_direction(j, upward);
  const long long limit = la + lb + 2;
  for (long long k = 1; k <= limit; ++k) {
    const int ga = a[mod(static_cast<long long>(i) + k * da, la)];
    const int gb = b[mod(static_cast<long long>(j) + k * db, lb)];
    if (ga != gb) {
      const int s = a[mod(static_cast<long long>(i) + (k - 1) * da, la)];
      const int d_a = mod(ga - s, n);
      const int d_b = mod(gb - s, n);
      int r = d_a < d_b ? 1 : -1;
      if ((k - 1) % 2 == 1) r = -r;
      return r;
    }
  }
  return 0;
}

inline bool chords_interleave(int g1, int g2, int h1, int h2) {
  if (g1 == h1 || g1 == h2 || g2 == h1 || g2 == h2) return false;
  const int lo = std::min(g1, g2);
  const int hi = std::max(g1, g2);
  const bool in1 = lo < h1 && h1 < hi;
  const bool in2 = lo < h2 && h2 < hi;
  return in1 != in2;
}

// Number of transverse double points between the geodesic-like realisations
// of a and b.  With `self` set, a and b must be the same word and the count is
// the self-intersection number.
inline long long intersection_count(const Word& a, const Word& b, int n, bool self) {
  const std::size_t la = a.size();
  const std::size_t lb = b.size();
  long long chord_cross = 0;
  for (std::size_t i = 0; i < la; ++i) {
    const int a1 = a[i];
    const int a2 = a[(i + 1) % la];
    for (std::size_t j = self ? i + 1 : 0; j < lb; ++j) {
      if ((i % 2) != (j % 2)) continue;
      if (chords_interleave(a1, a2, b[j], b[(j + 1) % lb])) ++chord_cross;
    }
  }
  std::vector<std::vector<std::size_t>> by_gap_b(static_cast<std::size_t>(n));
  for (std::size_t j = 0; j < lb; ++j) by_gap_b[static_cast<std::size_t>(b[j])].push_back(j);
  long long ends = 0;
  for (std::size_t i = 0; i < la; ++i) {
    for (std::size_t j : by_gap_b[static_cast<std::size_t>(a[i])]) {
      if (self && j <= i) continue;
      const int up = compare_points(a, i, b, j, true, n);
      const int down = compare_points(a, i, b, j, false, n);
      if (up == 0 || down == 0 || up == down) continue;
      const int dau = step_direction(i, true);
      const int dbu = step_direction(j, true);
      const bool up_now = a[mod(static_cast<long long>(i) + dau, static_cast<long long>(la))] !=
                          b[mod(static_cast<long long>(j) + dbu, static_cast<long long>(lb))];
      const bool down_now = a[mod(static_cast<long long>(i) - dau, static_cast<long long>(la))] !=
                            b[mod(static_cast<long long>(j) - dbu, static_cast<long long>(lb))];
      ends += (up_now ? 1 : 0) + (down_now ? 1 : 0);
    }
  }
  return chord_cross + ends / 2;
}

inline Partition partition_of(const Word& w, int n) {
  std::vector<int> counts(static_cast<std::size_t>(n), 0);
  for (int g : w) ++counts[static_cast<std::size_t>(g)];
  Partition p;
  int parity = 0;  // crossings strictly between puncture k and puncture n
  std::vector<bool> with_n(static_cast<std::size_t>(n) + 1, true);
  for (int k = n - 1; k >= 1; --k) {
    parity = (parity + counts[static_cast<std::size_t>(k)]) % 2;
    with_n[static_cast<std::size_t>(k)] = parity == 0;
  }
  for (int k = 1; k <= n; ++k) {
    (with_n[static_cast<std::size_t>(k)] ? p.outer : p.inner).push_back(k);
  }
  return p;
}

}  // namespace detail

// An essential simple closed curve in tight, canonical position.
class Curve {
 public:
  Curve() = default;

  // Tightens and validates an alternating crossing sequence whose first
  // entry crosses downward.
  static Curve from_word(const PunctureConfig& config, const std::vector<int>& raw) {
    for (int g : raw) {
      if (g < 0 || g >= config.gaps()) {
        fail(ErrorCode::index_out_of_range, "gap " + std::to_string(g) + " outside 0.." +
                                                std::to_string(config.gaps() - 1));
      }
    }
    if (raw.size() % 2 != 0) {
      fail(ErrorCode::not_embedded, "a closed curve crosses the axis an even number of times");
    }
    detail::Word w = detail::reduce(detail::letters_of(raw));
    return from_reduced(config, std::move(w), true);
  }

  // Builds from a sequence of (gap crossed, side travelled next).
  static Curve from_chords(const PunctureConfig& config,
                           const std::vector<std::pair<int, Side>>& chords) {
    if (chords.empty()) fail(ErrorCode::inessential_curve, "empty chord list");
    for (std::size_t k = 0; k < chords.size(); ++k) {
      if (chords[k].second == chords[(k + 1) % chords.size()].second) {
        fail(ErrorCode::not_embedded, "consecutive chords lie in the same hemisphere at entry " +
                                          std::to_string(k));
      }
    }
    std::size_t start = chords.front().second == Side::lower ? 0 : 1;
    std::vector<int> raw;
    for (std::size_t t = 0; t < chords.size(); ++t) {
      raw.push_back(chords[(start + t) % chords.size()].first);
    }
    return from_word(config, raw);
  }

  // For words known to be images of simple curves under a homeomorphism.
  static Curve from_trusted(const PunctureConfig& config, detail::Word reduced) {
    return from_reduced(config, std::move(reduced), false);
  }

  const PunctureConfig& config() const { return config_; }
  const std::vector<int>& crossings() const { return word_; }
  int crossing_count() const { return static_cast<int>(word_.size()); }
  bool is_round() const { return word_.size() == 2; }

  std::vector<int> gap_counts() const {
    std::vector<int> counts(static_cast<std::size_t>(config_.gaps()), 0);
    for (int g : word_) ++counts[static_cast<std::size_t>(g)];
    return counts;
  }

  Partition partition() const { return detail::partition_of(word_, config_.punctures()); }

  std::string key() const {
    std::ostringstream os;
    os << config_.punctures() << ':';
    for (std::size_t i = 0; i < word_.size(); ++i) os << (i ? "," : "") << word_[i];
    return os.str();
  }

  bool operator==(const Curve& o) const { return config_ == o.config_ && word_ == o.word_; }
  std::strong_ordering operator<=>(const Curve& o) const {
    if (auto c = config_.punctures() <=> o.config_.punctures(); c != 0) return c;
    if (auto c = word_.size() <=> o.word_.size(); c != 0) return c;
    return word_ <=> o.word_;
  }

 private:
  static Curve from_reduced(const PunctureConfig& config, detail::Word w, bool check) {
    if (w.empty()) fail(ErrorCode::inessential_curve, "curve is null-homotopic");
    if (check) {
      if (detail::is_proper_power(w)) fail(ErrorCode::not_embedded, "curve is a proper power");
      if (detail::intersection_count(w, w, config.punctures(), true) != 0) {
        fail(ErrorCode::not_embedded, "curve has self-intersections after tightening");
      }
    }
    Partition p = detail::partition_of(w, config.punctures());
    if (p.inner.size() < 2 || p.outer.size() < 2) {
      fail(ErrorCode::inessential_curve, "curve bounds a once-punctured disk");
    }
    Curve c;
    c.config_ = config;
    c.word_ = detail::canonical_rotation(w);
    return c;
  }

  PunctureConfig config_;
  std::vector<int> word_;
};

// Round curve enclosing punctures i..j.
inline Curve make_round(const PunctureConfig& config, int i, int j) {
  const int n = config.punctures();
  if (i < 1 || j > n || i >= j) {
    fail(ErrorCode::index_out_of_range,
         "round(" + std::to_string(i) + "," + std::to_string(j) + ") on " + std::to_string(n) +
             " punctures");
  }
  const int size = j - i + 1;
  if (size < 2 || size > n - 2) {
    fail(ErrorCode::inessential_curve, "round(" + std::to_string(i) + "," + std::to_string(j) +
                                           ") bounds a disk with fewer than two punctures");
  }
  return Curve::from_trusted(config, {i - 1, j % n});
}

// A finite set of pairwise disjoint, pairwise non-isotopic curves.
class MultiCurve {
 public:
  MultiCurve() = default;
  MultiCurve(const PunctureConfig& config, std::vector<Curve> curves) : config_(config) {
    for (const Curve& c : curves) require_same_config(config, c.config(), "multicurve component");
    std::sort(curves.begin(), curves.end());
    for (std::size_t i = 0; i + 1 < curves.size(); ++i) {
      if (curves[i] == curves[i + 1]) {
        fail(ErrorCode::isotopic_pair, "component repeated: " + curves[i].key());
      }
    }
    for (std::size_t i = 0; i < curves.size(); ++i) {
      for (std::size_t j = i + 1; j < curves.size(); ++j) {
        if (detail::intersection_count(curves[i].crossings(), curves[j].crossings(),
                                       config.punctures(), false) != 0) {
          fail(ErrorCode::not_embedded, "components " + std::to_string(i) + " and " +
                                            std::to_string(j) + " intersect");
        }
      }
    }
    curves_ = std::move(curves);
  }
  explicit MultiCurve(const Curve& c) : config_(c.config()), curves_{c} {}

  const PunctureConfig& config() const { return config_; }
  const std::vector<Curve>& components() const { return curves_; }
  std::size_t size() const { return curves_.size(); }

  const Curve& single() const {
    if (curves_.size() != 1) {
      fail(ErrorCode::multiple_components,
           "expected one component, found " + std::to_string(curves_.size()));
    }
    return curves_.front();
  }

  bool operator==(const MultiCurve&) const = default;

 private:
  PunctureConfig config_;
  std::vector<Curve> curves_;
};

inline Partition enclosed_partition(const Curve& c) { return c.partition(); }

inline Partition enclosed_partition(const MultiCurve& m) { return m.single().partition(); }

}  // namespace ktb
