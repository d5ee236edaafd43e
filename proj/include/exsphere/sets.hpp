// Copyright 2026 The exsphere Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Closed subsets of R^n described as finite unions of analytic primitives
// and convex intersections, with membership, distance and projection.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "exsphere/geom.hpp"

namespace exsphere {

/// {x : <normal, x> <= offset}
struct HalfSpace {
  Vec normal;
  double offset = 0;
};

struct ClosedBall {
  Vec center;
  double radius = 1;
};

/// {x : |x - center| >= radius}, the closed complement of an open ball.
struct BallComplement {
  Vec center;
  double radius = 1;
};

/// {x : lo <= <normal, x> <= hi}; lo == hi is a hyperplane.
struct Slab {
  Vec normal;
  double lo = 0;
  double hi = 0;
};

/// point + span(basis). Empty basis is a single point, a full basis the
/// whole space. The basis is orthonormalized at load.
struct AffineSubspace {
  Vec point;
  std::vector<Vec> basis;
};

struct FinitePointSet {
  std::vector<Vec> points;
};

using Primitive = std::variant<HalfSpace, ClosedBall, BallComplement, Slab,
                               AffineSubspace, FinitePointSet>;

char const* primitive_name(Primitive const& p);

//---------------------------------------------------------------------------//
/*!
 * CSG tree node.
 *
 * Unions may nest arbitrarily. Intersection children must be convex leaves
 * (half-spaces, balls, slabs, affine subspaces, single points) so the
 * projection onto the intersection stays certifiable.
 */
struct CsgNode {
  enum class Kind { leaf, set_union, set_intersection };

  Kind kind = Kind::leaf;
  Primitive shape;
  std::string label;
  std::vector<CsgNode> children;
  // Filled in by ClosedSetDesc. For intersections with interior,
  // interior_point is a point at positive depth inside every child.
  bool has_interior = false;
  Vec interior_point;

  static CsgNode leaf(Primitive p, std::string label = {});
  static CsgNode make_union(std::vector<CsgNode> children);
  static CsgNode make_intersection(std::vector<CsgNode> children);
};

struct Box {
  Vec lo;
  Vec hi;

  int dim() const { return lo.dim(); }
  Vec center() const { return 0.5 * (lo + hi); }
  double diameter() const { return distance(lo, hi); }
  bool contains(Vec const& p, double pad = 0) const;
};

enum class Exactness { exact, approximate };

struct ProjectionResult {
  std::vector<Vec> points;  // one representative per cluster, lex-sorted
  double distance = 0;
  Exactness exactness = Exactness::exact;
  // The nearest set is a continuum (e.g. a sphere seen from its center);
  // points then holds a finite sample of it.
  bool continuum = false;

  std::size_t cluster_count() const { return points.size(); }
  bool unique() const { return !continuum && points.size() == 1; }
};

struct BoundarySample {
  Vec point;
  std::string label;
};

//---------------------------------------------------------------------------//
/*!
 * Immutable description of a nonempty closed set A, together with the
 * bounding box that defines the region of interest and every
 * scale-dependent tolerance.
 */
class ClosedSetDesc {
 public:
  ClosedSetDesc(CsgNode root, Box box);

  int dim() const { return box_.dim(); }
  Box const& box() const { return box_; }
  CsgNode const& root() const { return root_; }
  double diameter() const { return diam_; }

  // Tolerances, all proportional to the box diameter.
  double cluster_tol() const { return 1e-6 * diam_; }
  double ball_tol() const { return 1e-7 * diam_; }
  double member_slack() const { return 1e-12 * diam_; }
  double grid_h() const { return diam_ / (dim() == 2 ? 512.0 : 128.0); }

  bool contains(Vec const& x) const;
  double distance(Vec const& x) const;
  ProjectionResult project(Vec const& x) const;
  bool interior_contains(Vec const& x) const;
  bool boundary_contains(Vec const& x) const;

  // Whether x lies in cl(int A), decided analytically per primitive.
  bool closure_of_interior_contains(Vec const& x) const;

  /*!
   * Whether a in bdry A also lies in bdry(int A): for every eps in the
   * schedule, B(a; eps) must meet int A.
   *
   * Interior-carrying pieces are regular closed, so B(a; eps) meets int A
   * exactly when some piece lies within eps of a. A witness point is still
   * produced for each eps as a cross-check.
   */
  bool in_bdry_of_interior(Vec const& a,
                           std::span<double const> eps_schedule) const;
  bool in_bdry_of_interior(Vec const& a) const;
  std::vector<double> default_eps_schedule() const;

  // A point of int A inside B(a; eps): analytic inward offsets first, then
  // up to `draws` uniform samples of the ball.
  std::optional<Vec> interior_point_near(Vec const& a, double eps,
                                         std::uint64_t seed,
                                         int draws = 1000) const;

  std::vector<BoundarySample> sample_boundary(int count,
                                              std::uint64_t seed) const;
  // Regular lattice of boundary points with the given spacing.
  std::vector<BoundarySample> boundary_lattice(double spacing) const;

  std::string boundary_label(Vec const& a) const;
  std::vector<std::string> labels() const;

  // Analytic outward normals of the primitives whose boundary holds a.
  std::vector<Vec> candidate_normals(Vec const& a) const;
  /*!
   * The whole proximal normal cone at a when a primitive of A certifies it:
   * A contains the primitive, so N_A(a) lies inside the primitive's cone,
   * which is listed exactly for half-spaces, balls, ball complements, slab
   * faces and hyperplanes. nullopt when no single primitive settles it
   * (corners, isolated points, lines in 3D).
   */
  std::optional<std::vector<Vec>> complete_normals(Vec const& a) const;
  // Directions from a into the interior of primitives whose boundary holds a.
  std::vector<Vec> inward_directions(Vec const& a) const;
  // Boundary points b of every primitive with s - b normal to it at b.
  std::vector<Vec> foot_points(Vec const& s) const;

  bool is_convex() const;
  bool has_interior() const { return root_.has_interior; }

  // cl(int A) as a CSG description; nullopt when int A is empty.
  std::optional<ClosedSetDesc> closure_of_interior() const;

  std::vector<CsgNode const*> leaves() const;

 private:
  CsgNode root_;
  Box box_;
  double diam_ = 0;
};

}  // namespace exsphere
