// Copyright 2026 The exsphere Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Radius functions r : bdry A -> (0, +inf], given per labeled boundary
// component as a constant or an arithmetic expression in x, y, z.

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "exsphere/sets.hpp"

namespace exsphere {

/// Parsed arithmetic expression over the coordinates x, y, z.
///
/// Grammar: sums and products of numbers, `inf`, coordinates and the calls
/// sqrt, abs, exp, sin, cos, min, max, with `^` for powers.
class Expr {
 public:
  static Expr parse(std::string const& text);
  double eval(Vec const& p) const;
  std::string const& text() const { return text_; }

  struct Node;

 private:
  std::shared_ptr<Node const> root_;
  std::string text_;
};

class RadiusField {
 public:
  struct Rule {
    ExtReal constant = ExtReal::infinity();
    std::optional<Expr> expr;
    // Declared Lipschitz bound used by the continuity audit.
    double lipschitz = 0;
  };

  // Same constant on every component.
  static RadiusField uniform(ExtReal value);

  void set_constant(std::string const& label, ExtReal value);
  void set_expression(std::string const& label, std::string const& text,
                      double lipschitz);

  bool has_rule(std::string const& label) const;
  Rule const& rule(std::string const& label) const;
  std::vector<std::string> rule_labels() const;

  ExtReal at(std::string const& label, Vec const& a) const;
  // r(a), with the component picked by the set's boundary labeling.
  ExtReal value(ClosedSetDesc const& set, Vec const& a) const;

  // Throws DomainError naming the first uncovered component.
  void require_covers(ClosedSetDesc const& set) const;

 private:
  std::map<std::string, Rule> rules_;
  std::optional<Rule> fallback_;
};

struct ContinuityAudit {
  bool ok = true;
  int pairs = 0;
  double worst_excess = 0;
  std::string worst_label;
};

/// Sampled check of |r(p) - r(q)| <= L |p - q| + tol over adjacent pairs of
/// boundary points within each component.
ContinuityAudit audit_continuity(ClosedSetDesc const& set,
                                 RadiusField const& field, int pairs,
                                 std::uint64_t seed);

}  // namespace exsphere
