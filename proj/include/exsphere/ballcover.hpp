// Copyright 2026 The exsphere Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Constructive witness balls: for x outside A, a closed ball of radius
// rho(x) through x that misses A, or for rho(x) = inf a direction u with
// B(x + delta u; delta) missing A for the requested deltas.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "exsphere/conditions.hpp"
#include "exsphere/exec.hpp"
#include "exsphere/radius_field.hpp"
#include "exsphere/sets.hpp"
#include "exsphere/witness.hpp"

namespace exsphere {

class ConstructionError : public std::runtime_error {
 public:
  ConstructionError(std::string const& what, WitnessTrace trace)
      : std::runtime_error(what), trace_(std::move(trace)) {}
  WitnessTrace const& trace() const { return trace_; }

 private:
  WitnessTrace trace_;
};

/*!
 * Radius of the ball through x, centered on the ray toward y, whose sphere
 * passes through the circle where S(x; rho_x) meets S(y; r_ae):
 * rho_x^2 d / (d^2 + rho_x^2 - r_ae^2) with d = |y - x|.
 *
 * Requires d >= r_ae (so the center lies between x and y).
 */
double rho_epsilon(double rho_x, double dist_yx, double r_ae);

/// A point of int A within eps of a_x; a_x must lie in bdry(int A).
Vec find_interior_point_near(ClosedSetDesc const& set, Vec const& a_x,
                             double eps, std::uint64_t seed);

/*!
 * First boundary point of A on the segment from x (outside A) to z (inside
 * int A). The crossing must fall inside B(a_x; eps), i.e. between the two
 * roots where the segment's line enters and leaves that ball.
 */
Vec boundary_crossing(ClosedSetDesc const& set, Vec const& x, Vec const& z,
                      Vec const& a_x, double eps);

struct WitnessOptions {
  double eps0 = 0;  // <= 0: rho_x / 2
  int density = 0;
  double rho_max = 0;
  int max_halvings = 60;
  std::uint64_t seed = 1;
};

/// Build and self-validate the witness for x. Throws ConstructionError with
/// the trace when no valid witness is found.
WitnessBall construct_witness(ClosedSetDesc const& set, RadiusField const& r,
                              Vec const& x, std::vector<double> const& deltas,
                              WitnessOptions const& opts = {});

struct CoverAttempt {
  Vec x;
  std::optional<WitnessBall> witness;
  std::string error;
};

std::vector<CoverAttempt> build_cover(ClosedSetDesc const& set,
                                      RadiusField const& r,
                                      std::vector<Vec> const& points,
                                      std::vector<double> const& deltas,
                                      WitnessOptions const& opts = {},
                                      Exec exec = Exec::parallel);

}  // namespace exsphere
