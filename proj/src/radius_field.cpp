// Copyright 2026 The exsphere Authors.
// SPDX-License-Identifier: Apache-2.0

#include "exsphere/radius_field.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

namespace exsphere {

struct Expr::Node {
  enum class Op { num, var, neg, add, sub, mul, div, pow, call };
  Op op = Op::num;
  double value = 0;
  int var = 0;
  std::string fn;
  std::vector<std::shared_ptr<Node const>> args;
};

namespace {

using NodePtr = std::shared_ptr<Expr::Node const>;
using Op = Expr::Node::Op;

class ExprParser {
 public:
  explicit ExprParser(std::string const& s) : s_(s) {}

  NodePtr parse() {
    auto n = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return n;
  }

 private:
  std::string const& s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(std::string const& msg) const {
    throw DomainError("expression '" + s_ + "' at column " +
                      std::to_string(pos_ + 1) + ": " + msg);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
      ++pos_;
    }
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static NodePtr make(Op op, std::vector<NodePtr> args) {
    auto n = std::make_shared<Expr::Node>();
    n->op = op;
    n->args = std::move(args);
    return n;
  }

  NodePtr sum() {
    auto lhs = product();
    for (;;) {
      if (eat('+')) {
        lhs = make(Op::add, {lhs, product()});
      } else if (eat('-')) {
        lhs = make(Op::sub, {lhs, product()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr product() {
    auto lhs = unary();
    for (;;) {
      if (eat('*')) {
        lhs = make(Op::mul, {lhs, unary()});
      } else if (eat('/')) {
        lhs = make(Op::div, {lhs, unary()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    if (eat('-')) return make(Op::neg, {unary()});
    if (eat('+')) return unary();
    auto base = atom();
    if (eat('^')) return make(Op::pow, {base, unary()});
    return base;
  }

  NodePtr atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    if (eat('(')) {
      auto n = sum();
      if (!eat(')')) fail("expected ')'");
      return n;
    }
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double v = 0;
      auto [end, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
      if (ec != std::errc()) fail("bad number");
      pos_ = static_cast<std::size_t>(end - s_.data());
      auto n = std::make_shared<Expr::Node>();
      n->value = v;
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t b = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) {
        ++pos_;
      }
      std::string id = s_.substr(b, pos_ - b);
      auto n = std::make_shared<Expr::Node>();
      if (id == "x" || id == "y" || id == "z") {
        n->op = Op::var;
        n->var = id[0] - 'x';
        return n;
      }
      if (id == "inf") {
        n->value = std::numeric_limits<double>::infinity();
        return n;
      }
      static std::vector<std::string> const fns{"sqrt", "abs", "exp", "sin",
                                                "cos",  "min", "max"};
      if (std::find(fns.begin(), fns.end(), id) == fns.end()) {
        pos_ = b;
        fail("unknown identifier '" + id + "'");
      }
      if (!eat('(')) fail("expected '(' after " + id);
      n->op = Op::call;
      n->fn = id;
      n->args.push_back(sum());
      while (eat(',')) n->args.push_back(sum());
      if (!eat(')')) fail("expected ')'");
      std::size_t want = (id == "min" || id == "max") ? 2 : 1;
      if (n->args.size() != want) fail(id + " takes " + std::to_string(want) + " argument(s)");
      return n;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }
};

double eval_node(Expr::Node const& n, Vec const& p) {
  auto arg = [&](std::size_t i) { return eval_node(*n.args[i], p); };
  switch (n.op) {
    case Op::num:
      return n.value;
    case Op::var:
      if (n.var >= p.dim()) throw DomainError("expression uses z in 2D");
      return p[n.var];
    case Op::neg:
      return -arg(0);
    case Op::add:
      return arg(0) + arg(1);
    case Op::sub:
      return arg(0) - arg(1);
    case Op::mul:
      return arg(0) * arg(1);
    case Op::div:
      return arg(0) / arg(1);
    case Op::pow:
      return std::pow(arg(0), arg(1));
    case Op::call:
      if (n.fn == "sqrt") return std::sqrt(arg(0));
      if (n.fn == "abs") return std::abs(arg(0));
      if (n.fn == "exp") return std::exp(arg(0));
      if (n.fn == "sin") return std::sin(arg(0));
      if (n.fn == "cos") return std::cos(arg(0));
      if (n.fn == "min") return std::min(arg(0), arg(1));
      if (n.fn == "max") return std::max(arg(0), arg(1));
      break;
  }
  throw DomainError("malformed expression node");
}

}  // namespace

Expr Expr::parse(std::string const& text) {
  Expr e;
  e.text_ = text;
  e.root_ = ExprParser(e.text_).parse();
  return e;
}

double Expr::eval(Vec const& p) const { return eval_node(*root_, p); }

//---------------------------------------------------------------------------//
RadiusField RadiusField::uniform(ExtReal value) {
  RadiusField f;
  f.fallback_ = Rule{value, std::nullopt, 0};
  return f;
}

void RadiusField::set_constant(std::string const& label, ExtReal value) {
  if (!(value.value() > 0)) throw DomainError("radius must be positive");
  rules_[label] = Rule{value, std::nullopt, 0};
}

void RadiusField::set_expression(std::string const& label,
                                 std::string const& text, double lipschitz) {
  if (lipschitz < 0) throw DomainError("Lipschitz bound must be nonnegative");
  rules_[label] = Rule{ExtReal::infinity(), Expr::parse(text), lipschitz};
}

bool RadiusField::has_rule(std::string const& label) const {
  return fallback_ || rules_.count(label) > 0;
}

RadiusField::Rule const& RadiusField::rule(std::string const& label) const {
  auto it = rules_.find(label);
  if (it != rules_.end()) return it->second;
  if (fallback_) return *fallback_;
  throw DomainError("no radius rule for component '" + label + "'");
}

std::vector<std::string> RadiusField::rule_labels() const {
  std::vector<std::string> out;
  for (auto const& [k, v] : rules_) out.push_back(k);
  return out;
}

ExtReal RadiusField::at(std::string const& label, Vec const& a) const {
  Rule const& r = rule(label);
  if (!r.expr) return r.constant;
  double v = r.expr->eval(a);
  if (std::isnan(v) || !(v > 0)) {
    throw DomainError("radius expression '" + r.expr->text() + "' gives " +
                      std::to_string(v) + " at " + to_string(a) +
                      "; values must lie in (0, inf]");
  }
  return ExtReal::from_double(v);
}

ExtReal RadiusField::value(ClosedSetDesc const& set, Vec const& a) const {
  return at(set.boundary_label(a), a);
}

void RadiusField::require_covers(ClosedSetDesc const& set) const {
  for (auto const& l : set.labels()) {
    if (!has_rule(l)) {
      throw DomainError("radius rules do not cover component '" + l + "'");
    }
  }
}

//---------------------------------------------------------------------------//
ContinuityAudit audit_continuity(ClosedSetDesc const& set,
                                 RadiusField const& field, int pairs,
                                 std::uint64_t seed) {
  ContinuityAudit audit;
  double tol = 1e-9 * set.diameter();
  double step = 1e-3 * set.diameter();
  auto samples = set.sample_boundary(pairs, seed);
  // Neighbours come from a fine lattice of the same component.
  auto near = set.boundary_lattice(step);
  for (auto const& s : samples) {
    auto const& rule = field.rule(s.label);
    if (!rule.expr) {
      ++audit.pairs;
      continue;
    }
    Vec const* best = nullptr;
    double bd = std::numeric_limits<double>::infinity();
    for (auto const& q : near) {
      if (q.label != s.label) continue;
      double d = distance(q.point, s.point);
      if (d > 0 && d < bd) {
        bd = d;
        best = &q.point;
      }
    }
    if (!best) continue;
    ++audit.pairs;
    double rp = field.at(s.label, s.point).value();
    double rq = field.at(s.label, *best).value();
    if (std::isinf(rp) || std::isinf(rq)) {
      if (std::isinf(rp) != std::isinf(rq)) {
        audit.ok = false;
        audit.worst_excess = std::numeric_limits<double>::infinity();
        audit.worst_label = s.label;
      }
      continue;
    }
    double excess = std::abs(rp - rq) - rule.lipschitz * bd - tol;
    if (excess > audit.worst_excess) {
      audit.worst_excess = excess;
      audit.worst_label = s.label;
    }
    if (excess > 0) audit.ok = false;
  }
  return audit;
}

}  // namespace exsphere
