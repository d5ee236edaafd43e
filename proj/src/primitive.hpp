// Copyright 2026 The exsphere Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Per-primitive geometry used by ClosedSetDesc. Internal header.

#pragma once

#include <random>
#include <vector>

#include "exsphere/sets.hpp"

namespace exsphere::detail {

struct LeafProjection {
  std::vector<Vec> points;
  bool continuum = false;
};

bool leaf_contains(Primitive const& p, Vec const& x, double slack);
bool leaf_interior_contains(Primitive const& p, Vec const& x, double slack);
bool leaf_has_interior(Primitive const& p, int dim);
bool leaf_is_convex(Primitive const& p);

LeafProjection leaf_project(Primitive const& p, Vec const& x);
double leaf_distance(Primitive const& p, Vec const& x);
// Distance from x to the topological boundary of the primitive.
double leaf_boundary_distance(Primitive const& p, Vec const& x);

std::vector<Vec> leaf_outward_normals(Primitive const& p, Vec const& a,
                                      double tol);
std::vector<Vec> leaf_inward_directions(Primitive const& p, Vec const& a,
                                        double tol);
std::vector<Vec> leaf_foot_points(Primitive const& p, Vec const& s);

// Uniformly chosen boundary point (may fall outside the box).
std::optional<Vec> leaf_random_boundary_point(Primitive const& p,
                                              Box const& box,
                                              std::mt19937_64& rng);
std::vector<Vec> leaf_boundary_lattice(Primitive const& p, Box const& box,
                                       double spacing);

// Orthonormal basis of the orthogonal complement of n (unit).
std::vector<Vec> orthonormal_complement(Vec const& n);
Vec random_unit(int dim, std::mt19937_64& rng);

Primitive normalize_primitive(Primitive p, int dim);

}  // namespace exsphere::detail
