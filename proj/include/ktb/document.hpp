#pragma once

// Sectioned text documents shared by certificates and structured reports.
//
//   # comment
//   [section]
//   key = value
//
// Values are strings, atoms, [lists], {sets}, {key: value} maps, calls
// name(arg, key=value) and products lhs * rhs.  A call named braid keeps its
// body verbatim.  Serialisation is canonical, so a document already in normal
// form survives parse followed by serialize byte for byte.

#include <cctype>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ktb/errors.hpp"

namespace ktb {

struct Value {
  enum class Kind { atom, string, list, set, map, call, product };

  Kind kind = Kind::atom;
  std::string text;  // atom text, string contents, call name, raw braid body
  std::vector<Value> items;
  std::vector<std::pair<std::string, Value>> named;
  int line = 0;

  static Value atom(std::string t) { return {Kind::atom, std::move(t), {}, {}, 0}; }
  static Value str(std::string t) { return {Kind::string, std::move(t), {}, {}, 0}; }
  static Value list(std::vector<Value> v) { return {Kind::list, {}, std::move(v), {}, 0}; }
  static Value set(std::vector<Value> v) { return {Kind::set, {}, std::move(v), {}, 0}; }
  static Value map(std::vector<std::pair<std::string, Value>> m) {
    return {Kind::map, {}, {}, std::move(m), 0};
  }
  static Value call(std::string name, std::vector<Value> args,
                    std::vector<std::pair<std::string, Value>> named_args = {}) {
    return {Kind::call, std::move(name), std::move(args), std::move(named_args), 0};
  }
  static Value product(Value lhs, Value rhs) {
    return {Kind::product, {}, {std::move(lhs), std::move(rhs)}, {}, 0};
  }

  bool is_atom() const { return kind == Kind::atom; }

  const Value* find(const std::string& key) const {
    for (const auto& kv : named) {
      if (kv.first == key) return &kv.second;
    }
    return nullptr;
  }
};

struct Entry {
  std::vector<std::string> comments;
  std::string key;
  Value value;
  int line = 0;
};

struct Section {
  std::vector<std::string> comments;
  std::string name;
  std::vector<Entry> entries;
  int line = 0;

  const Entry* find(const std::string& key) const {
    for (const Entry& e : entries) {
      if (e.key == key) return &e;
    }
    return nullptr;
  }
};

struct Document {
  std::vector<Section> sections;
  std::vector<std::string> trailing_comments;

  const Section* find(const std::string& name) const {
    for (const Section& s : sections) {
      if (s.name == name) return &s;
    }
    return nullptr;
  }
};

namespace detail {

inline bool atom_char(char ch) {
  return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '.' || ch == '-' ||
         ch == '+' || ch == '^';
}

inline std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

class ValueParser {
 public:
  ValueParser(const std::string& text, int first_line) : s_(text), line_(first_line) {}

  Value parse_all() {
    Value v = parse_value();
    skip_ws();
    if (pos_ != s_.size()) error("unexpected trailing text");
    return v;
  }

 private:
  [[noreturn]] void error(const std::string& what) {
    std::size_t end = pos_;
    while (end < s_.size() && !std::isspace(static_cast<unsigned char>(s_[end])) && end - pos_ < 16) ++end;
    fail(ErrorCode::parse_error, "line " + std::to_string(line_) + ": " + what + " at '" +
                                     s_.substr(pos_, end - pos_) + "'");
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
      if (s_[pos_] == '\n') ++line_;
      ++pos_;
    }
  }

  bool eat(char ch) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char ch) {
    if (!eat(ch)) error(std::string("expected '") + ch + "'");
  }

  std::string atom_text() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && atom_char(s_[pos_])) ++pos_;
    if (pos_ == start) error("expected a value");
    return s_.substr(start, pos_ - start);
  }

  Value parse_value() {
    Value lhs = parse_term();
    while (eat('*')) {
      Value rhs = parse_term();
      lhs = Value::product(std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  std::vector<Value> parse_items(char close) {
    std::vector<Value> items;
    while (true) {
      if (eat(close)) return items;
      items.push_back(parse_value());
      if (eat(close)) return items;
      expect(',');
    }
  }

  Value parse_term() {
    skip_ws();
    if (pos_ >= s_.size()) error("unexpected end of value");
    const int line = line_;
    const char ch = s_[pos_];
    Value v;
    if (ch == '"') {
      ++pos_;
      std::string out;
      while (pos_ < s_.size() && s_[pos_] != '"') {
        if (s_[pos_] == '\\' && pos_ + 1 < s_.size()) ++pos_;
        if (s_[pos_] == '\n') error("newline inside string");
        out += s_[pos_++];
      }
      if (pos_ >= s_.size()) error("unterminated string");
      ++pos_;
      v = Value::str(std::move(out));
    } else if (ch == '[') {
      ++pos_;
      v = Value::list(parse_items(']'));
    } else if (ch == '{') {
      ++pos_;
      // A map when the first element is `key:`.
      const std::size_t save = pos_;
      const int save_line = line_;
      skip_ws();
      bool is_map = false;
      if (pos_ < s_.size() && atom_char(s_[pos_])) {
        atom_text();
        skip_ws();
        is_map = pos_ < s_.size() && s_[pos_] == ':';
      }
      pos_ = save;
      line_ = save_line;
      if (is_map) {
        std::vector<std::pair<std::string, Value>> m;
        while (true) {
          if (eat('}')) break;
          std::string key = atom_text();
          expect(':');
          m.emplace_back(std::move(key), parse_value());
          if (eat('}')) break;
          expect(',');
        }
        v = Value::map(std::move(m));
      } else {
        v = Value::set(parse_items('}'));
      }
    } else if (atom_char(ch)) {
      std::string name = atom_text();
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == '(') {
        ++pos_;
        if (name == "braid") {
          const std::size_t close = s_.find(')', pos_);
          if (close == std::string::npos) error("unterminated braid(...)");
          std::string body = s_.substr(pos_, close - pos_);
          for (char b : body) {
            if (b == '\n') error("newline inside braid(...)");
          }
          pos_ = close + 1;
          std::istringstream is(body);
          std::string tok, norm;
          while (is >> tok) norm += (norm.empty() ? "" : " ") + tok;
          v = Value::call(name, {Value::atom(norm)});
        } else {
          std::vector<Value> args;
          std::vector<std::pair<std::string, Value>> named;
          while (true) {
            if (eat(')')) break;
            // named argument?
            const std::size_t save = pos_;
            const int save_line = line_;
            bool done = false;
            skip_ws();
            if (pos_ < s_.size() && atom_char(s_[pos_])) {
              std::string key = atom_text();
              skip_ws();
              if (pos_ < s_.size() && s_[pos_] == '=') {
                ++pos_;
                named.emplace_back(std::move(key), parse_value());
                done = true;
              }
            }
            if (!done) {
              pos_ = save;
              line_ = save_line;
              if (!named.empty()) error("positional argument after a named one");
              args.push_back(parse_value());
            }
            if (eat(')')) break;
            expect(',');
          }
          v = Value::call(name, std::move(args), std::move(named));
        }
      } else {
        v = Value::atom(std::move(name));
      }
    } else {
      error("unexpected character");
    }
    v.line = line;
    return v;
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  int line_;
};

inline std::string flat(const Value& v);

inline std::string join_flat(const std::vector<Value>& items) {
  std::string s;
  for (std::size_t i = 0; i < items.size(); ++i) s += (i ? ", " : "") + flat(items[i]);
  return s;
}

inline std::string flat(const Value& v) {
  switch (v.kind) {
    case Value::Kind::atom: return v.text;
    case Value::Kind::string: return quote(v.text);
    case Value::Kind::list: return "[" + join_flat(v.items) + "]";
    case Value::Kind::set: return "{" + join_flat(v.items) + "}";
    case Value::Kind::map: {
      std::string s = "{";
      for (std::size_t i = 0; i < v.named.size(); ++i) {
        s += (i ? ", " : "") + v.named[i].first + ": " + flat(v.named[i].second);
      }
      return s + "}";
    }
    case Value::Kind::call: {
      if (v.text == "braid") return "braid(" + (v.items.empty() ? "" : v.items[0].text) + ")";
      std::string s = v.text + "(" + join_flat(v.items);
      for (std::size_t i = 0; i < v.named.size(); ++i) {
        s += (i || !v.items.empty() ? ", " : "") + v.named[i].first + "=" + flat(v.named[i].second);
      }
      return s + ")";
    }
    case Value::Kind::product: return flat(v.items[0]) + " * " + flat(v.items[1]);
  }
  return "";
}

constexpr std::size_t kLineWidth = 100;

inline std::string pretty(const Value& v, std::size_t indent, std::size_t used) {
  std::string f = flat(v);
  if (used + f.size() <= kLineWidth) return f;
  const std::string pad(indent + 2, ' ');
  if (v.kind == Value::Kind::list || v.kind == Value::Kind::set) {
    const char open = v.kind == Value::Kind::list ? '[' : '{';
    const char close = v.kind == Value::Kind::list ? ']' : '}';
    std::string s(1, open);
    s += '\n';
    for (const Value& it : v.items) s += pad + pretty(it, indent + 2, indent + 2) + ",\n";
    return s + std::string(indent, ' ') + close;
  }
  if (v.kind == Value::Kind::call && v.named.empty() && !v.items.empty() && v.text != "braid") {
    std::string head = v.text + "(";
    for (std::size_t i = 0; i + 1 < v.items.size(); ++i) head += flat(v.items[i]) + ", ";
    return head + pretty(v.items.back(), indent, used + head.size()) + ")";
  }
  return f;
}

}  // namespace detail

inline Value parse_value(const std::string& text, int line = 1) {
  return detail::ValueParser(text, line).parse_all();
}

inline std::string to_text(const Value& v) { return detail::flat(v); }

inline int bracket_balance(const std::string& line) {
  int depth = 0;
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (in_string) {
      if (ch == '\\') {
        ++i;
      } else if (ch == '"') {
        in_string = false;
      }
      continue;
    }
    if (ch == '"') in_string = true;
    if (ch == '[' || ch == '{' || ch == '(') ++depth;
    if (ch == ']' || ch == '}' || ch == ')') --depth;
  }
  return depth;
}

inline std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

inline Document parse_document(const std::string& text) {
  Document doc;
  std::vector<std::string> lines;
  {
    std::istringstream is(text);
    std::string l;
    while (std::getline(is, l)) {
      if (!l.empty() && l.back() == '\r') l.pop_back();
      lines.push_back(l);
    }
  }
  std::vector<std::string> pending;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const int line_no = static_cast<int>(i) + 1;
    const std::string t = trim(lines[i]);
    if (t.empty()) continue;
    if (t[0] == '#') {
      pending.push_back(t);
      continue;
    }
    if (t[0] == '[' && t.back() == ']' && t.find('=') == std::string::npos) {
      Section s;
      s.name = trim(t.substr(1, t.size() - 2));
      s.comments = std::move(pending);
      s.line = line_no;
      pending.clear();
      if (s.name.empty()) fail(ErrorCode::parse_error, "line " + std::to_string(line_no) + ": empty section name");
      if (doc.find(s.name)) {
        fail(ErrorCode::parse_error, "line " + std::to_string(line_no) + ": duplicate section [" + s.name + "]");
      }
      doc.sections.push_back(std::move(s));
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      fail(ErrorCode::parse_error, "line " + std::to_string(line_no) + ": expected key = value at '" + t + "'");
    }
    if (doc.sections.empty()) {
      fail(ErrorCode::parse_error, "line " + std::to_string(line_no) + ": entry outside any section");
    }
    Entry e;
    e.key = trim(t.substr(0, eq));
    e.line = line_no;
    for (char ch : e.key) {
      if (!detail::atom_char(ch)) {
        fail(ErrorCode::parse_error, "line " + std::to_string(line_no) + ": bad key '" + e.key + "'");
      }
    }
    std::string body = t.substr(eq + 1);
    int depth = bracket_balance(body);
    while (depth > 0 && i + 1 < lines.size()) {
      ++i;
      body += "\n" + lines[i];
      depth = bracket_balance(body);
    }
    e.value = parse_value(body, line_no);
    e.comments = std::move(pending);
    pending.clear();
    Section& sec = doc.sections.back();
    if (sec.find(e.key)) {
      fail(ErrorCode::parse_error, "line " + std::to_string(line_no) + ": duplicate key '" + e.key + "'");
    }
    sec.entries.push_back(std::move(e));
  }
  doc.trailing_comments = std::move(pending);
  return doc;
}

inline std::string serialize_document(const Document& doc) {
  std::ostringstream os;
  for (std::size_t si = 0; si < doc.sections.size(); ++si) {
    const Section& s = doc.sections[si];
    if (si) os << '\n';
    for (const std::string& c : s.comments) os << c << '\n';
    os << '[' << s.name << "]\n";
    for (const Entry& e : s.entries) {
      for (const std::string& c : e.comments) os << c << '\n';
      const std::string head = e.key + " = ";
      os << head << detail::pretty(e.value, 0, head.size()) << '\n';
    }
  }
  for (const std::string& c : doc.trailing_comments) os << c << '\n';
  return os.str();
}

}  // namespace ktb
