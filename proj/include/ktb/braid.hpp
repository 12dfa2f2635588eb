#pragma once

// Spherical braid words acting on curves by half-twists.
//
// s_k exchanges punctures k and k+1 along gap k.  On the crossing groupoid it
// fixes every crossing except the downward crossing of gap k, which becomes a
// detour through the neighbouring gaps.

#include <cctype>
#include <sstream>
#include <string>
#include <vector>

#include "ktb/curve.hpp"
#include "ktb/errors.hpp"

namespace ktb {

struct Generator {
  int index = 1;  // 1..n-1
  int sign = 1;   // +1 or -1

  bool operator==(const Generator&) const = default;
  Generator inverse() const { return {index, -sign}; }
};

class BraidWord {
 public:
  BraidWord() = default;
  explicit BraidWord(std::vector<Generator> letters) : letters_(std::move(letters)) {}

  static BraidWord parse(const std::string& text) {
    std::vector<Generator> out;
    std::istringstream is(text);
    std::string tok;
    while (is >> tok) {
      std::size_t p = 0;
      if (tok.size() < 2 || (tok[0] != 's' && tok[0] != 'S')) {
        fail(ErrorCode::parse_error, "braid letter '" + tok + "' must look like s3 or s3^-1");
      }
      p = 1;
      std::size_t q = p;
      while (q < tok.size() && std::isdigit(static_cast<unsigned char>(tok[q]))) ++q;
      if (q == p) fail(ErrorCode::parse_error, "braid letter '" + tok + "' lacks an index");
      Generator g{std::stoi(tok.substr(p, q - p)), 1};
      std::string rest = tok.substr(q);
      if (rest == "^-1") {
        g.sign = -1;
      } else if (!rest.empty() && rest != "^1") {
        fail(ErrorCode::parse_error, "braid letter '" + tok + "' has a bad exponent");
      }
      out.push_back(g);
    }
    return BraidWord(std::move(out));
  }

  const std::vector<Generator>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  BraidWord inverse() const {
    std::vector<Generator> out;
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.push_back(it->inverse());
    return BraidWord(std::move(out));
  }

  BraidWord operator*(const BraidWord& rhs) const {
    std::vector<Generator> out = letters_;
    out.insert(out.end(), rhs.letters_.begin(), rhs.letters_.end());
    return BraidWord(std::move(out));
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
      if (i) s += ' ';
      s += 's' + std::to_string(letters_[i].index);
      if (letters_[i].sign < 0) s += "^-1";
    }
    return s;
  }

  void check_config(const PunctureConfig& config) const {
    for (const Generator& g : letters_) {
      if (g.index < 1 || g.index >= config.punctures()) {
        fail(ErrorCode::index_out_of_range, "generator s" + std::to_string(g.index) + " on " +
                                                std::to_string(config.punctures()) +
                                                " punctures");
      }
    }
  }

  bool operator==(const BraidWord&) const = default;

 private:
  std::vector<Generator> letters_;
};

namespace detail {

inline void push_image(std::vector<Letter>& out, const Letter& l, const Generator& g, int n) {
  if (l.gap != g.index) {
    out.push_back(l);
    return;
  }
  const int k = g.index;
  const int before = k - 1;
  const int after = (k + 1) % n;
  // Image of the downward crossing; upward crossings map to its inverse.
  const int first = g.sign > 0 ? before : after;
  const int last = g.sign > 0 ? after : before;
  if (l.down) {
    out.push_back({first, true});
    out.push_back({k, false});
    out.push_back({last, true});
  } else {
    out.push_back({last, false});
    out.push_back({k, true});
    out.push_back({first, false});
  }
}

inline Word apply_generator(const Word& w, const Generator& g, int n) {
  std::vector<Letter> out;
  out.reserve(w.size() + 8);
  for (std::size_t i = 0; i < w.size(); ++i) push_image(out, {w[i], i % 2 == 0}, g, n);
  return reduce(out);
}

inline Word apply_word(Word w, const BraidWord& b, int n) {
  const auto& ls = b.letters();
  for (auto it = ls.rbegin(); it != ls.rend(); ++it) w = apply_generator(w, *it, n);
  return w;
}

}  // namespace detail

// Image of a curve.  The rightmost letter acts first, so act(u*v, c) equals
// act(u, act(v, c)).
inline Curve act(const BraidWord& b, const Curve& c) {
  b.check_config(c.config());
  return Curve::from_trusted(c.config(),
                             detail::apply_word(c.crossings(), b, c.config().punctures()));
}

inline MultiCurve act(const BraidWord& b, const MultiCurve& m) {
  std::vector<Curve> out;
  out.reserve(m.size());
  for (const Curve& c : m.components()) out.push_back(act(b, c));
  return MultiCurve(m.config(), std::move(out));
}

inline BraidWord invert(const BraidWord& b) { return b.inverse(); }

// Puncture permutation: perm[p] is the position reached by the strand that
// starts at puncture p when the letters are read left to right.
inline std::vector<int> strand_permutation(const BraidWord& b, int n) {
  std::vector<int> at(static_cast<std::size_t>(n) + 1);
  for (int p = 0; p <= n; ++p) at[static_cast<std::size_t>(p)] = p;
  // position -> strand
  std::vector<int> strand_at = at;
  for (const Generator& g : b.letters()) {
    std::swap(strand_at[static_cast<std::size_t>(g.index)],
              strand_at[static_cast<std::size_t>(g.index) + 1]);
  }
  std::vector<int> perm(static_cast<std::size_t>(n) + 1, 0);
  for (int pos = 1; pos <= n; ++pos) perm[static_cast<std::size_t>(strand_at[static_cast<std::size_t>(pos)])] = pos;
  return perm;
}

}  // namespace ktb
