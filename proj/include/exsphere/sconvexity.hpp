// Copyright 2026 The exsphere Authors.
// SPDX-License-Identifier: Apache-2.0
//
// S-convexity of A (no two normal segments at distinct base points, both
// inside S, meet inside S), the auxiliary sets built from projections and
// realization radii, the unique-projection hypothesis on the boundary of
// the r-hull, openness of O, and the three-way equivalence harness.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "exsphere/conditions.hpp"
#include "exsphere/exec.hpp"
#include "exsphere/radius_field.hpp"
#include "exsphere/sets.hpp"

namespace exsphere {

struct SetOptions {
  int density = 0;
  double rho_max = 0;
};

/// Points whose nearest-point structure defines the hulls, bundled with the
/// scene so that membership tests are plain predicates.
class HullContext {
 public:
  HullContext(ClosedSetDesc const& set, RadiusField const& r,
              SetOptions opts = {});

  ClosedSetDesc const& set() const { return *set_; }
  RadiusField const& field() const { return *r_; }
  SetOptions const& options() const { return opts_; }

  // x outside A with a projection a off bdry(int A) and |x - a| < r(a).
  bool in_O(Vec const& x) const;
  // x outside A with a projection in bdry(int A) but not in bdry_r(int A).
  bool in_P(Vec const& x) const;
  // a in bdry(int A) and some sampled unit normal has rho(a, zeta) >= r(a).
  bool in_bdry_r(Vec const& a) const;
  // Unique projection a and |x - a| < rho(a, zeta_x).
  bool in_A_UP(Vec const& x) const;
  // Same with the capped radius min(rho(a, zeta_x), r(a)).
  bool in_A_UP_r(Vec const& x) const;
  // A u A_UP(r) u O u P.
  bool in_hull_r(Vec const& x) const;
  // A u A^UP u O u P.
  bool in_hull_sup(Vec const& x) const;

 private:
  ClosedSetDesc const* set_;
  RadiusField const* r_;
  SetOptions opts_;

  bool off_interior_close(Vec const& x, ProjectionResult const& p) const;
  bool interior_unrealized(ProjectionResult const& p) const;
  std::optional<double> unique_gap(Vec const& x, ProjectionResult const& p,
                                   bool capped) const;
};

using Membership = std::function<bool(Vec const&)>;

struct NormalSegment {
  Vec a;
  Vec zeta;
  double length = 0;
  bool in_s = true;
  Vec end() const { return a + length * zeta; }
};

struct SegmentViolation {
  NormalSegment first;
  NormalSegment second;
  Vec s;
};

struct SConvexityReport {
  Verdict verdict = Verdict::holds;
  std::optional<SegmentViolation> violation;
  std::vector<NormalSegment> segments;
  std::size_t pairs_tested = 0;
  std::size_t foot_tests = 0;
};

struct SConvexOptions {
  int samples = 120;
  std::uint64_t seed = 1;
  int density = 0;
  int normals_per_point = 16;
  int foot_points_per_segment = 24;
  Exec exec = Exec::parallel;
};

/*!
 * Sample boundary points and unit proximal normals, extend each normal
 * segment until it leaves S (capped at twice the scene diameter), then look
 * for two segments with distinct bases meeting at a point of S outside A:
 * pairwise intersection (exact in 2D, closest approach in 3D), plus a
 * foot-point pass that checks every other base whose normal passes through
 * a sampled segment point.
 */
SConvexityReport is_s_convex(ClosedSetDesc const& set, Membership const& in_s,
                             SConvexOptions const& opts = {});

/// Distance along zeta from a until the ray leaves S.
double exit_length(ClosedSetDesc const& set, Membership const& in_s,
                   Vec const& a, Vec const& zeta);

/// Intersection of two segments in the plane, or the midpoint of a
/// collinear overlap; in 3D, the midpoint of the closest approach when it
/// is below tol.
std::optional<Vec> segment_meet(Vec const& p1, Vec const& q1, Vec const& p2,
                                Vec const& q2, double tol);

struct UpRecord {
  Vec x;
  std::size_t clusters = 1;
  std::vector<Vec> projections;
};

struct UpReport {
  Verdict verdict = Verdict::holds;
  std::vector<UpRecord> located;
  std::optional<std::size_t> certificate;
};

struct UpOptions {
  int rays = 64;
  std::uint64_t seed = 1;
  int march_steps = 256;
  int bisection_depth = 60;
  Exec exec = Exec::parallel;
};

/// Locate bdry of the r-hull by membership bisection along random and
/// axis-aligned rays, and require a single projection at each located
/// point that belongs to the hull.
UpReport check_UP_r(HullContext const& ctx, UpOptions const& opts = {});

struct OpenRecord {
  Vec x;
  double eta = 0;  // 0 when no radius passed
};

struct OpenReport {
  Verdict verdict = Verdict::holds;
  std::vector<OpenRecord> records;
  std::optional<std::size_t> certificate;
};

struct OpenOptions {
  int samples = 50;
  std::uint64_t seed = 1;
  int perturbations = 20;
  Exec exec = Exec::parallel;
};

OpenReport is_open_O(HullContext const& ctx, OpenOptions const& opts = {});

struct HarnessOptions {
  CheckOptions check;
  SConvexOptions sconvex;
  UpOptions up;
  OpenOptions open;
};

struct HarnessReport {
  ConditionReport condition;      // (i)
  SConvexityReport sup_convex;    // (ii) S = A u A^UP u O u P
  SConvexityReport r_convex;      // (iii) S = A u A_UP(r) u O u P ...
  UpReport up;                    // ... plus the unique-projection check
  OpenReport open;                // ... plus openness of O
  Verdict i = Verdict::holds;
  Verdict ii = Verdict::holds;
  Verdict iii = Verdict::holds;
  bool consistent = true;
};

HarnessReport equivalence_harness(ClosedSetDesc const& set, RadiusField const& r,
                                  HarnessOptions const& opts = {});

}  // namespace exsphere
