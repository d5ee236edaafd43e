// Copyright 2026 The exsphere Authors.
// SPDX-License-Identifier: Apache-2.0

#include "exsphere/scene.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "exsphere/conditions.hpp"

namespace exsphere {

namespace {

std::string where(std::string const& source, int line, int column) {
  std::ostringstream os;
  os << source;
  if (line > 0) os << ':' << line;
  if (column > 0) os << ':' << column;
  return os.str();
}

}  // namespace

SceneError::SceneError(std::string const& source, int line, int column,
                       std::string const& msg)
    : std::runtime_error(where(source, line, column) + ": " + msg),
      line_(line),
      column_(column) {}

namespace {

enum class Tok { ident, number, lparen, rparen, comma, semi, equals, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;
  int column = 0;  // 1-based
  double value = 0;
};

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '*';
}
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
         c == '.';
}

// Decimal literal via from_chars, so "0.1" is the correctly rounded double.
std::optional<double> read_number(std::string_view s, std::size_t& used) {
  std::size_t start = s.size() > 0 && s[0] == '+' ? 1 : 0;
  double v = 0;
  auto res = std::from_chars(s.data() + start, s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr == s.data() + start) return std::nullopt;
  used = static_cast<std::size_t>(res.ptr - s.data());
  // "1..5" or "2x" must not split into several tokens.
  if (used < s.size()) {
    char c = s[used];
    if (c == '.' || std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      return std::nullopt;
    }
  }
  return v;
}

class Lexer {
 public:
  Lexer(std::string const& line, std::string const& source, int lineno,
        int col0 = 0)
      : s_(line), source_(source), lineno_(lineno), col0_(col0) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s_.size()) {
      char c = s_[i];
      int col = col0_ + static_cast<int>(i) + 1;
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      if (c == '#') break;
      Token t;
      t.column = col;
      if (c == '(' || c == ')' || c == ',' || c == ';' || c == '=') {
        t.kind = c == '(' ? Tok::lparen
                 : c == ')' ? Tok::rparen
                 : c == ',' ? Tok::comma
                 : c == ';' ? Tok::semi
                            : Tok::equals;
        t.text = std::string(1, c);
        ++i;
      } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' ||
                 c == '+' || c == '.') {
        std::size_t used = 0;
        auto v = read_number(std::string_view(s_).substr(i), used);
        if (!v) throw SceneError(source_, lineno_, col, "malformed number");
        t.kind = Tok::number;
        t.value = *v;
        t.text = s_.substr(i, used);
        i += used;
      } else if (ident_start(c)) {
        std::size_t j = i + 1;
        while (j < s_.size() && ident_char(s_[j])) ++j;
        t.kind = Tok::ident;
        t.text = s_.substr(i, j - i);
        i = j;
      } else {
        throw SceneError(source_, lineno_, col,
                         std::string("unexpected character '") + c + "'");
      }
      out.push_back(std::move(t));
    }
    Token end;
    end.column = col0_ + static_cast<int>(s_.size()) + 1;
    out.push_back(end);
    return out;
  }

 private:
  std::string const& s_;
  std::string const& source_;
  int lineno_;
  int col0_;
};

// Cursor over one line's tokens.
class Cursor {
 public:
  Cursor(std::vector<Token> toks, std::string const& source, int lineno)
      : t_(std::move(toks)), source_(source), lineno_(lineno) {}

  Token const& peek() const { return t_[i_]; }
  Token const& next() { return t_[i_ < t_.size() - 1 ? i_++ : i_]; }
  bool at_end() const { return peek().kind == Tok::end; }

  [[noreturn]] void fail(Token const& t, std::string const& msg) const {
    throw SceneError(source_, lineno_, t.column, msg);
  }

  Token const& expect(Tok k, char const* what) {
    if (peek().kind != k) fail(peek(), std::string("expected ") + what);
    return next();
  }

  double number() {
    Token const& t = peek();
    if (t.kind == Tok::ident && t.text == "inf") {
      next();
      return std::numeric_limits<double>::infinity();
    }
    return expect(Tok::number, "a number").value;
  }

  Vec tuple() {
    expect(Tok::lparen, "'('");
    std::vector<double> c;
    Token const& first = peek();
    c.push_back(number());
    while (peek().kind == Tok::comma) {
      next();
      c.push_back(number());
    }
    expect(Tok::rparen, "')'");
    if (c.size() < 2 || c.size() > 3) fail(first, "points have 2 or 3 coordinates");
    for (double v : c) {
      if (!std::isfinite(v)) fail(first, "coordinates must be finite");
    }
    Vec v(static_cast<int>(c.size()));
    for (std::size_t k = 0; k < c.size(); ++k) v[static_cast<int>(k)] = c[k];
    return v;
  }

  std::vector<Vec> tuple_list() {
    std::vector<Vec> out;
    if (peek().kind != Tok::lparen) return out;
    out.push_back(tuple());
    while (peek().kind == Tok::semi) {
      next();
      out.push_back(tuple());
    }
    return out;
  }

  std::vector<double> number_list() {
    std::vector<double> out{number()};
    while (peek().kind == Tok::comma) {
      next();
      out.push_back(number());
    }
    return out;
  }

 private:
  std::vector<Token> t_;
  std::size_t i_ = 0;
  std::string const& source_;
  int lineno_;
};

//---------------------------------------------------------------------------//
struct LeafArgs {
  std::map<std::string, Token> keys;
  std::map<std::string, Vec> vecs;
  std::map<std::string, double> nums;
  std::map<std::string, std::vector<Vec>> lists;
  std::string label;
};

LeafArgs read_args(Cursor& c) {
  LeafArgs a;
  while (!c.at_end()) {
    Token key = c.expect(Tok::ident, "a parameter name");
    if (a.keys.count(key.text)) c.fail(key, "duplicate parameter '" + key.text + "'");
    c.expect(Tok::equals, "'='");
    a.keys[key.text] = key;
    if (key.text == "label") {
      a.label = c.expect(Tok::ident, "a label").text;
    } else if (c.peek().kind == Tok::lparen) {
      auto list = c.tuple_list();
      if (list.size() == 1) a.vecs[key.text] = list.front();
      a.lists[key.text] = std::move(list);
    } else if (key.text == "basis" || key.text == "points") {
      a.lists[key.text] = {};  // empty list
    } else {
      a.nums[key.text] = c.number();
    }
  }
  return a;
}

class LeafBuilder {
 public:
  LeafBuilder(Cursor& c, Token const& kind, LeafArgs a, int dim)
      : c_(c), kind_(kind), a_(std::move(a)), dim_(dim) {}

  Vec vec(char const* key) {
    auto it = a_.vecs.find(key);
    if (it == a_.vecs.end()) c_.fail(kind_, std::string("missing point '") + key + "'");
    used_.push_back(key);
    check_dim(it->second, key);
    return it->second;
  }
  double num(char const* key) {
    auto it = a_.nums.find(key);
    if (it == a_.nums.end()) c_.fail(kind_, std::string("missing number '") + key + "'");
    used_.push_back(key);
    if (!std::isfinite(it->second)) c_.fail(a_.keys[key], "value must be finite");
    return it->second;
  }
  std::vector<Vec> list(char const* key) {
    auto it = a_.lists.find(key);
    if (it == a_.lists.end()) c_.fail(kind_, std::string("missing list '") + key + "'");
    used_.push_back(key);
    for (auto const& v : it->second) check_dim(v, key);
    return it->second;
  }
  void finish() {
    used_.push_back("label");
    for (auto const& [k, t] : a_.keys) {
      if (std::find(used_.begin(), used_.end(), k) == used_.end()) {
        c_.fail(t, "unknown parameter '" + k + "' for " + kind_.text);
      }
    }
  }

 private:
  void check_dim(Vec const& v, std::string const& key) {
    if (v.dim() != dim_) {
      c_.fail(a_.keys[key], "'" + key + "' has dimension " +
                                std::to_string(v.dim()) + ", scene has " +
                                std::to_string(dim_));
    }
  }

  Cursor& c_;
  Token kind_;
  LeafArgs a_;
  int dim_;
  std::vector<std::string> used_;
};

CsgNode parse_leaf(Cursor& c, Token const& kind, int dim) {
  LeafArgs args = read_args(c);
  std::string label = args.label;
  LeafBuilder b(c, kind, std::move(args), dim);
  Primitive p;
  std::string const& k = kind.text;
  if (k == "halfspace") {
    p = HalfSpace{b.vec("normal"), b.num("offset")};
  } else if (k == "ball") {
    p = ClosedBall{b.vec("center"), b.num("radius")};
  } else if (k == "ballcomplement") {
    p = BallComplement{b.vec("center"), b.num("radius")};
  } else if (k == "slab") {
    p = Slab{b.vec("normal"), b.num("lo"), b.num("hi")};
  } else if (k == "hyperplane") {
    Vec n = b.vec("normal");
    double off = b.num("offset");
    p = Slab{n, off, off};
  } else if (k == "affine") {
    p = AffineSubspace{b.vec("point"), b.list("basis")};
  } else if (k == "points") {
    p = FinitePointSet{b.list("points")};
  } else {
    c.fail(kind, "unknown primitive '" + k + "'");
  }
  b.finish();
  return CsgNode::leaf(std::move(p), label);
}

std::string trim(std::string const& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Frame {
  CsgNode node;
  int line;
};

struct RadiusLine {
  std::string label;
  int line;
  int column;
  std::optional<ExtReal> constant;
  std::string expr;
  double lipschitz = 0;
};

}  // namespace

//---------------------------------------------------------------------------//
Scene parse_scene(std::string const& text, std::string const& name) {
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  std::string section;
  int dim = 0;
  std::optional<Box> box;
  int box_line = 0, set_line = 0, radius_line = 0;

  std::vector<Frame> stack;
  std::vector<CsgNode> top;
  std::vector<RadiusLine> rules;
  SampleSpec samples;
  std::map<std::string, int> seen_keys;

  auto need_dim = [&](int line) {
    if (dim == 0) throw SceneError(name, line, 1, "'dimension' must come first");
  };

  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw.substr(0, raw.find('#'));
    std::string t = trim(line);
    if (t.empty()) continue;
    int col0 = static_cast<int>(line.find_first_not_of(" \t")) + 1;

    if (t.front() == '[') {
      if (t.back() != ']') throw SceneError(name, lineno, col0, "unterminated section header");
      section = trim(t.substr(1, t.size() - 2));
      if (section != "set" && section != "radius" && section != "samples") {
        throw SceneError(name, lineno, col0 + 1, "unknown section '" + section + "'");
      }
      if (seen_keys.count("[" + section + "]")) {
        throw SceneError(name, lineno, col0, "section [" + section + "] repeated");
      }
      seen_keys["[" + section + "]"] = lineno;
      if (section == "set") set_line = lineno;
      if (section == "radius") radius_line = lineno;
      if (section != "set" && !stack.empty()) {
        throw SceneError(name, stack.back().line, 1, "missing 'end'");
      }
      continue;
    }

    if (section == "radius") {
      auto eq = line.find('=');
      if (eq == std::string::npos) throw SceneError(name, lineno, col0, "expected 'label = value'");
      RadiusLine r;
      r.label = trim(line.substr(0, eq));
      r.line = lineno;
      r.column = col0;
      if (r.label.empty() || !std::all_of(r.label.begin(), r.label.end(), [](char c) {
            return ident_char(c) || c == '*';
          })) {
        throw SceneError(name, lineno, col0, "bad label '" + r.label + "'");
      }
      std::string rhs = line.substr(eq + 1);
      int rhs_col = static_cast<int>(eq) + 2;
      auto semi = rhs.find(';');
      std::string value = trim(rhs.substr(0, semi));
      if (semi != std::string::npos) {
        std::string opt = rhs.substr(semi + 1);
        Cursor c(Lexer(opt, name, lineno, rhs_col + static_cast<int>(semi)).run(),
                 name, lineno);
        Token k = c.expect(Tok::ident, "'lipschitz'");
        if (k.text != "lipschitz") c.fail(k, "unknown option '" + k.text + "'");
        c.expect(Tok::equals, "'='");
        r.lipschitz = c.number();
        if (!c.at_end()) c.fail(c.peek(), "unexpected text after lipschitz bound");
        if (!(r.lipschitz >= 0) || !std::isfinite(r.lipschitz)) {
          c.fail(k, "lipschitz bound must be finite and nonnegative");
        }
      }
      if (value.empty()) throw SceneError(name, lineno, rhs_col, "missing radius value");
      std::size_t used = 0;
      if (value == "inf") {
        r.constant = ExtReal::infinity();
      } else if (auto v = read_number(value, used); v && used == value.size()) {
        if (!(*v > 0) || !std::isfinite(*v)) {
          throw SceneError(name, lineno, rhs_col, "radius must be positive");
        }
        r.constant = ExtReal::finite(*v);
      } else {
        r.expr = value;
        if (semi == std::string::npos) {
          throw SceneError(name, lineno, rhs_col,
                           "expression rules need '; lipschitz = L'");
        }
      }
      for (auto const& o : rules) {
        if (o.label == r.label) {
          throw SceneError(name, lineno, col0, "duplicate rule for '" + r.label + "'");
        }
      }
      rules.push_back(std::move(r));
      continue;
    }

    Cursor c(Lexer(line, name, lineno).run(), name, lineno);
    Token head = c.expect(Tok::ident, "a keyword");

    if (section.empty() || section == "samples") {
      if (seen_keys.count(section + "." + head.text)) {
        c.fail(head, "'" + head.text + "' given twice");
      }
      seen_keys[section + "." + head.text] = lineno;
      c.expect(Tok::equals, "'='");
      if (section.empty() && head.text == "dimension") {
        Token const& v = c.peek();
        double d = c.number();
        if (d != 2 && d != 3) c.fail(v, "dimension must be 2 or 3");
        dim = static_cast<int>(d);
      } else if (section.empty() && head.text == "box") {
        need_dim(lineno);
        Token const& v = c.peek();
        Vec lo = c.tuple();
        Vec hi = c.tuple();
        if (lo.dim() != dim || hi.dim() != dim) c.fail(v, "box corners must match dimension");
        for (int k = 0; k < dim; ++k) {
          if (!(lo[k] < hi[k])) c.fail(v, "box needs lo < hi in every coordinate");
        }
        box = Box{lo, hi};
        box_line = lineno;
      } else if (section == "samples") {
        std::string const& k = head.text;
        auto count = [&]() {
          Token const& v = c.peek();
          double x = c.number();
          if (!(x >= 0) || x != std::floor(x) || x > 1e9) c.fail(v, "expected a count");
          return x;
        };
        if (k == "seed") {
          samples.seed = static_cast<std::uint64_t>(count());
        } else if (k == "boundary") {
          samples.boundary = static_cast<int>(count());
        } else if (k == "density") {
          samples.density = static_cast<int>(count());
        } else if (k == "probes") {
          samples.probes = static_cast<int>(count());
        } else if (k == "points") {
          samples.points = c.tuple_list();
          for (auto const& p : samples.points) {
            if (p.dim() != dim) c.fail(head, "points must match the scene dimension");
          }
        } else if (k == "delta") {
          Token const& v = c.peek();
          samples.deltas = c.number_list();
          for (double d : samples.deltas) {
            if (!(d > 0) || !std::isfinite(d)) c.fail(v, "deltas must be positive");
          }
        } else {
          c.fail(head, "unknown sample key '" + k + "'");
        }
      } else {
        c.fail(head, "unknown key '" + head.text + "'");
      }
      if (!c.at_end()) c.fail(c.peek(), "unexpected text");
      continue;
    }

    // [set]
    need_dim(lineno);
    if (head.text == "union" || head.text == "intersection") {
      CsgNode n = head.text == "union" ? CsgNode::make_union({})
                                       : CsgNode::make_intersection({});
      if (!c.at_end()) {
        Token k = c.expect(Tok::ident, "'label'");
        if (k.text != "label") c.fail(k, "only 'label' is allowed here");
        c.expect(Tok::equals, "'='");
        n.label = c.expect(Tok::ident, "a label").text;
        if (!c.at_end()) c.fail(c.peek(), "unexpected text");
      }
      stack.push_back({std::move(n), lineno});
    } else if (head.text == "end") {
      if (stack.empty()) c.fail(head, "'end' without an open union or intersection");
      if (!c.at_end()) c.fail(c.peek(), "unexpected text");
      Frame f = std::move(stack.back());
      stack.pop_back();
      if (f.node.children.empty()) {
        throw SceneError(name, f.line, 1, "empty union or intersection");
      }
      (stack.empty() ? top : stack.back().node.children).push_back(std::move(f.node));
    } else {
      CsgNode leaf = parse_leaf(c, head, dim);
      (stack.empty() ? top : stack.back().node.children).push_back(std::move(leaf));
    }
  }

  if (!stack.empty()) throw SceneError(name, stack.back().line, 1, "missing 'end'");
  if (dim == 0) throw SceneError(name, 0, 0, "missing 'dimension'");
  if (!box) throw SceneError(name, 0, 0, "missing 'box'");
  if (top.empty()) throw SceneError(name, set_line, 0, "the [set] section has no primitives");
  if (rules.empty()) throw SceneError(name, radius_line, 0, "missing [radius] rules");

  CsgNode root = top.size() == 1 ? std::move(top.front()) : CsgNode::make_union(std::move(top));
  std::optional<ClosedSetDesc> set;
  try {
    set.emplace(std::move(root), *box);
  } catch (DomainError const& e) {
    throw SceneError(name, set_line, 0, e.what());
  }

  RadiusField field;
  for (auto const& r : rules) {
    if (r.label == "*") {
      if (!r.constant) throw SceneError(name, r.line, r.column, "'*' takes a constant");
      field = RadiusField::uniform(*r.constant);
    }
  }
  auto labels = set->labels();
  for (auto const& r : rules) {
    if (r.label == "*") continue;
    if (std::find(labels.begin(), labels.end(), r.label) == labels.end()) {
      throw SceneError(name, r.line, r.column, "unknown label '" + r.label + "'");
    }
    try {
      if (r.constant) {
        field.set_constant(r.label, *r.constant);
      } else {
        field.set_expression(r.label, r.expr, r.lipschitz);
      }
    } catch (DomainError const& e) {
      throw SceneError(name, r.line, r.column, e.what());
    }
  }
  try {
    field.require_covers(*set);
  } catch (DomainError const& e) {
    throw SceneError(name, radius_line, 0, e.what());
  }
  auto audit = audit_continuity(*set, field, 1000, samples.seed);
  if (!audit.ok) {
    throw SceneError(name, radius_line, 0,
                     "radius rule for '" + audit.worst_label +
                         "' exceeds its declared Lipschitz bound");
  }
  auto touching = touching_conflicts(*set, field);
  if (!touching.empty()) {
    throw SceneError(name, set_line, 0,
                     "differently labeled components touch at " +
                         to_string(touching.front()) +
                         " with different radius rules");
  }
  for (auto const& p : samples.points) {
    if (!box->contains(p)) {
      throw SceneError(name, seen_keys["samples.points"], 0,
                       "probe point " + to_string(p) + " lies outside the box");
    }
  }
  (void)box_line;
  return Scene{name, std::move(*set), std::move(field), std::move(samples)};
}

Scene load_scene(std::string const& path) {
  std::ifstream f(path);
  if (!f) throw SceneError(path, 0, 0, "cannot open file");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_scene(ss.str(), path);
}

std::vector<Vec> parse_point_list(std::string const& text) {
  Cursor c(Lexer(text, "points", 0).run(), "points", 0);
  auto out = c.tuple_list();
  if (out.empty() || !c.at_end()) c.fail(c.peek(), "expected (x,y);(x,y)...");
  return out;
}

std::vector<double> parse_number_list(std::string const& text) {
  Cursor c(Lexer(text, "numbers", 0).run(), "numbers", 0);
  auto out = c.number_list();
  if (!c.at_end()) c.fail(c.peek(), "expected a comma-separated list");
  return out;
}

}  // namespace exsphere
