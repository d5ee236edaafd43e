// Copyright 2026 The exsphere Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Witness balls covering points of the complement of A.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "exsphere/geom.hpp"

namespace exsphere {

enum class WitnessCase {
  direct,         // rho(x) < d_A(x): the ball centered at x
  off_interior,   // projection not on bdry(int A)
  inner,          // |y - x| <= r(a_x) - rho*: centered at y
  lens_middle,    // r(a_x) - rho* < |y - x| < rho*
  lens_far,       // |y - x| >= rho*: tangent ball inside the lens union
  ray,            // rho(x) = inf, projection not on bdry(int A)
  ray_finite      // rho(x) = inf, direction from a finite construction
};

char const* case_tag(WitnessCase c);

/// Intermediate quantities of the construction, for diagnostics.
struct WitnessTrace {
  Vec a_x;
  double rho_x = 0;
  double eps = 0;
  int halvings = 0;
  std::optional<Vec> z_eps;
  std::optional<Vec> a_eps;
  std::optional<Vec> y_eps;
  double rho_star = 0;
  double rho_eps = 0;
  std::vector<std::string> notes;
};

struct WitnessBall {
  Vec x;
  WitnessCase tag = WitnessCase::direct;
  ExtReal rho;  // rho(x)
  // Finite case.
  std::optional<Ball> ball;
  // Infinite case: B(x + delta u; delta) for every requested delta.
  std::optional<Vec> direction;
  std::vector<double> deltas;
  WitnessTrace trace;

  bool finite() const { return ball.has_value(); }
};

}  // namespace exsphere
