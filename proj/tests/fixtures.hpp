// Copyright 2026 The exsphere Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Scenes built directly through the CSG API, so tests do not depend on the
// scene parser.

#pragma once

#include <string>

#include "exsphere/radius_field.hpp"
#include "exsphere/sets.hpp"

namespace exsphere::testing {

inline Box box2(double x0, double y0, double x1, double y1) {
  return Box{Vec(x0, y0), Vec(x1, y1)};
}

inline CsgNode lower_half(double y, std::string label) {
  return CsgNode::leaf(HalfSpace{Vec(0, 1), y}, std::move(label));
}

inline CsgNode upper_half(double y, std::string label) {
  return CsgNode::leaf(HalfSpace{Vec(0, -1), -y}, std::move(label));
}

// {y <= 0} u {y >= 2}
inline ClosedSetDesc strip() {
  return ClosedSetDesc(
      CsgNode::make_union({lower_half(0, "bottom"), upper_half(2, "top")}),
      box2(-3, -2, 3, 4));
}

// r = 1/2 on y = 0 and 1 on y = 2.
inline RadiusField strip_radius() {
  RadiusField r;
  r.set_constant("bottom", ExtReal::finite(0.5));
  r.set_constant("top", ExtReal::finite(1));
  return r;
}

// {y = 0} u {y >= 4}
inline ClosedSetDesc lineplane() {
  return ClosedSetDesc(
      CsgNode::make_union({CsgNode::leaf(Slab{Vec(0, 1), 0, 0}, "line"),
                           upper_half(4, "plane")}),
      box2(-4, -3, 4, 7));
}

// r = 1 on the line and 3 on the half-plane.
inline RadiusField lineplane_radius() {
  RadiusField r;
  r.set_constant("line", ExtReal::finite(1));
  r.set_constant("plane", ExtReal::finite(3));
  return r;
}

inline ClosedSetDesc halfplane() {
  return ClosedSetDesc(lower_half(0, "lower"), box2(-3, -3, 3, 3));
}

inline ClosedSetDesc unit_disk() {
  return ClosedSetDesc(CsgNode::leaf(ClosedBall{Vec(0, 0), 1}, "disk"),
                       box2(-3, -3, 3, 3));
}

inline ClosedSetDesc unit_ball3() {
  return ClosedSetDesc(CsgNode::leaf(ClosedBall{Vec(0, 0, 0), 1}, "ball"),
                       Box{Vec(-2, -2, -2), Vec(2, 2, 2)});
}

inline ClosedSetDesc hole() {
  return ClosedSetDesc(CsgNode::leaf(BallComplement{Vec(0, 0), 1}, "outside"),
                       box2(-2, -2, 2, 2));
}

inline ClosedSetDesc single_point() {
  return ClosedSetDesc(
      CsgNode::leaf(FinitePointSet{{Vec(0, 0)}}, "origin"), box2(-3, -3, 3, 3));
}

inline ClosedSetDesc x_axis() {
  return ClosedSetDesc(
      CsgNode::leaf(AffineSubspace{Vec(0, 0), {Vec(1, 0)}}, "axis"),
      box2(-3, -3, 3, 3));
}

// Quadrant {x <= 0, y <= 0} plus the isolated point (2, 0).
inline ClosedSetDesc quadrant_point() {
  auto q = CsgNode::make_intersection(
      {CsgNode::leaf(HalfSpace{Vec(1, 0), 0}), CsgNode::leaf(HalfSpace{Vec(0, 1), 0})});
  q.label = "quadrant";
  return ClosedSetDesc(
      CsgNode::make_union({q, CsgNode::leaf(FinitePointSet{{Vec(2, 0)}}, "spot")}),
      box2(-3, -3, 3, 3));
}

// Two closed unit disks touching at the origin.
inline ClosedSetDesc touching_disks() {
  return ClosedSetDesc(
      CsgNode::make_union({CsgNode::leaf(ClosedBall{Vec(-1, 0), 1}, "disks"),
                           CsgNode::leaf(ClosedBall{Vec(1, 0), 1}, "disks")}),
      box2(-3, -3, 3, 3));
}

inline RadiusField uniform(double v) { return RadiusField::uniform(ExtReal::from_double(v)); }

}  // namespace exsphere::testing
