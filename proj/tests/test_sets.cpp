// Copyright 2026 The exsphere Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>

#include "doctest.h"
#include "exsphere/grid_oracle.hpp"
#include "exsphere/sets.hpp"
#include "fixtures.hpp"

using namespace exsphere;
using namespace exsphere::testing;

namespace {

std::vector<Vec> random_points(Box const& b, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<Vec> out;
  for (int i = 0; i < n; ++i) {
    Vec p = b.lo;
    for (int k = 0; k < b.dim(); ++k) p[k] = b.lo[k] + u(rng) * (b.hi[k] - b.lo[k]);
    out.push_back(p);
  }
  return out;
}

std::vector<ClosedSetDesc> zoo() {
  std::vector<ClosedSetDesc> s;
  s.push_back(strip());
  s.push_back(lineplane());
  s.push_back(halfplane());
  s.push_back(unit_disk());
  s.push_back(hole());
  s.push_back(single_point());
  s.push_back(x_axis());
  s.push_back(quadrant_point());
  s.push_back(touching_disks());
  s.push_back(unit_ball3());
  return s;
}

}  // namespace

TEST_SUITE("sets") {
  TEST_CASE("membership examples") {
    CHECK(halfplane().contains(Vec(3, -1)));
    CHECK_FALSE(strip().contains(Vec(0, 1)));
    CHECK(single_point().contains(Vec(0, 0)));
    CHECK_FALSE(single_point().contains(Vec(0, 1e-6)));
  }

  TEST_CASE("distance examples") {
    CHECK(strip().distance(Vec(0, 1)) == doctest::Approx(1));
    CHECK(unit_disk().distance(Vec(2, 0)) == doctest::Approx(1));
    CHECK(hole().distance(Vec(0, 0)) == doctest::Approx(1));
  }

  TEST_CASE("projection examples") {
    auto p = strip().project(Vec(0, 1));
    REQUIRE(p.cluster_count() == 2);
    CHECK(p.points[0] == Vec(0, 0));
    CHECK(p.points[1] == Vec(0, 2));
    CHECK(p.distance == doctest::Approx(1));

    auto q = lineplane().project(Vec(1.3, 2));
    REQUIRE(q.cluster_count() == 2);
    CHECK(distance(q.points[0], Vec(1.3, 0)) < 1e-12);
    CHECK(distance(q.points[1], Vec(1.3, 4)) < 1e-12);

    auto b = unit_disk().project(Vec(0, 3));
    REQUIRE(b.unique());
    CHECK(distance(b.points[0], Vec(0, 1)) < 1e-12);

    auto c = hole().project(Vec(0, 0));
    CHECK(c.continuum);
    CHECK_FALSE(c.unique());
  }

  TEST_CASE("interior examples") {
    CHECK(halfplane().interior_contains(Vec(0, -1)));
    CHECK_FALSE(halfplane().interior_contains(Vec(0, 0)));
    CHECK_FALSE(x_axis().interior_contains(Vec(0, 0)));
    CHECK(lineplane().interior_contains(Vec(0, 5)));
    CHECK_FALSE(lineplane().interior_contains(Vec(0, 0)));
  }

  TEST_CASE("interior across a seam between two pieces") {
    // {x <= 0} u {x >= 0} is the plane: the seam is interior.
    ClosedSetDesc two(CsgNode::make_union({CsgNode::leaf(HalfSpace{Vec(1, 0), 0}, "l"),
                                           CsgNode::leaf(HalfSpace{Vec(-1, 0), 0}, "l")}),
                      box2(-2, -2, 2, 2));
    CHECK(two.interior_contains(Vec(0, 0.5)));
    // Touching disks: the contact point is not interior.
    CHECK_FALSE(touching_disks().interior_contains(Vec(0, 0)));
  }

  TEST_CASE("boundary of the interior") {
    CHECK(strip().in_bdry_of_interior(Vec(0, 2)));
    CHECK_FALSE(lineplane().in_bdry_of_interior(Vec(0, 0)));
    CHECK(lineplane().in_bdry_of_interior(Vec(0, 4)));
    CHECK_FALSE(single_point().in_bdry_of_interior(Vec(0, 0)));
    CHECK(quadrant_point().in_bdry_of_interior(Vec(0, 0)));
    CHECK_FALSE(quadrant_point().in_bdry_of_interior(Vec(2, 0)));
    CHECK_THROWS_AS(strip().in_bdry_of_interior(Vec(0, 1)), DomainError);
    CHECK_THROWS_AS(strip().in_bdry_of_interior(Vec(0, -1)), DomainError);
  }

  TEST_CASE("interior points near boundary points") {
    auto s = strip();
    auto z = s.interior_point_near(Vec(0, 2), 0.1, 1);
    REQUIRE(z);
    CHECK(distance(*z, Vec(0, 2)) < 0.1);
    CHECK(s.interior_contains(*z));
    CHECK_FALSE(lineplane().interior_point_near(Vec(0, 0), 0.1, 1, 2000));
  }

  TEST_CASE("boundary samples: determinism, labels, membership") {
    auto d = unit_disk();
    auto a = d.sample_boundary(4, 7);
    auto b = d.sample_boundary(4, 7);
    REQUIRE(a.size() == 4);
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].point == b[i].point);
      CHECK(a[i].point.norm() == doctest::Approx(1).epsilon(1e-12));
    }
    for (auto const& s : strip().sample_boundary(10, 3)) {
      bool on0 = std::abs(s.point[1]) < 1e-12, on2 = std::abs(s.point[1] - 2) < 1e-12;
      CHECK((on0 || on2));
      CHECK(s.label == (on0 ? "bottom" : "top"));
    }
    int line = 0, plane = 0;
    for (auto const& s : lineplane().sample_boundary(10, 3)) {
      if (s.label == "line") {
        ++line;
        CHECK(std::abs(s.point[1]) < 1e-12);
      } else {
        ++plane;
        CHECK(s.label == "plane");
        CHECK(std::abs(s.point[1] - 4) < 1e-12);
      }
    }
    CHECK(line + plane == 10);
    CHECK(line > 0);
    CHECK(plane > 0);
  }

  TEST_CASE("boundary samples sit next to the complement grid") {
    for (auto const& s : zoo()) {
      if (s.dim() == 3) continue;
      GridOracle g(s);
      for (auto const& b : s.sample_boundary(50, 5)) {
        CHECK(s.contains(b.point));
        CHECK(g.complement_distance(b.point) <= 2 * g.h());
      }
    }
  }

  TEST_CASE("distance vanishes exactly on A") {
    for (auto const& s : zoo()) {
      for (auto const& x : random_points(s.box(), 300, 9)) {
        CHECK((s.distance(x) == 0) == s.contains(x));
      }
      for (auto const& b : s.sample_boundary(20, 2)) CHECK(s.distance(b.point) == 0);
    }
  }

  TEST_CASE("projections lie in A at the reported distance") {
    for (auto const& s : zoo()) {
      for (auto const& x : random_points(s.box(), 300, 4)) {
        auto p = s.project(x);
        REQUIRE_FALSE(p.points.empty());
        CHECK(p.distance == doctest::Approx(s.distance(x)).epsilon(1e-12));
        for (auto const& q : p.points) {
          CHECK(s.contains(q));
          CHECK(std::abs(distance(x, q) - p.distance) <= s.cluster_tol());
        }
      }
    }
  }

  TEST_CASE("analytic distance agrees with the grid oracle within 2h") {
    for (auto const& s : zoo()) {
      GridOracle g(s);
      for (auto const& x : random_points(s.box(), 1000, 21)) {
        CHECK(std::abs(s.distance(x) - g.distance(x)) <= 2 * g.h());
      }
    }
  }

  TEST_CASE("interior implies membership; low-dimensional pieces have none") {
    for (auto const& s : zoo()) {
      GridOracle g(s);
      for (auto const& x : random_points(s.box(), 500, 13)) {
        if (s.interior_contains(x)) CHECK(s.contains(x));
        // Grid cross-check: a member with no outside node nearby is interior.
        if (s.contains(x) && g.complement_distance(x) > 2 * g.h()) {
          CHECK(s.interior_contains(x));
        }
      }
    }
    CHECK_FALSE(x_axis().has_interior());
    CHECK_FALSE(single_point().has_interior());
  }

  TEST_CASE("convex intersections") {
    auto q = quadrant_point();
    CHECK(q.contains(Vec(-1, -1)));
    CHECK_FALSE(q.contains(Vec(1, -1)));
    auto p = q.project(Vec(0.5, 0.5));
    REQUIRE(p.unique());
    CHECK(distance(p.points[0], Vec(0, 0)) < 1e-9);
    // A lens: intersection of two disks.
    ClosedSetDesc lens(CsgNode::make_intersection({CsgNode::leaf(ClosedBall{Vec(-0.5, 0), 1}),
                                                   CsgNode::leaf(ClosedBall{Vec(0.5, 0), 1})}),
                       box2(-2, -2, 2, 2));
    CHECK(lens.contains(Vec(0, 0.8)));
    CHECK_FALSE(lens.contains(Vec(0, 0.9)));
    CHECK(lens.distance(Vec(0, 2)) == doctest::Approx(2 - std::sqrt(0.75)).epsilon(1e-8));
    CHECK(lens.is_convex());
  }

  TEST_CASE("load-time rejections") {
    // Disjoint half-planes intersect in nothing.
    CHECK_THROWS_AS(
        ClosedSetDesc(CsgNode::make_intersection({CsgNode::leaf(HalfSpace{Vec(0, 1), 0}),
                                                  CsgNode::leaf(HalfSpace{Vec(0, -1), -1})}),
                      box2(-2, -2, 2, 2)),
        DomainError);
    // Non-convex intersection children are refused.
    CHECK_THROWS_AS(
        ClosedSetDesc(CsgNode::make_intersection({CsgNode::leaf(BallComplement{Vec(0, 0), 1}),
                                                  CsgNode::leaf(HalfSpace{Vec(0, 1), 0})}),
                      box2(-2, -2, 2, 2)),
        DomainError);
    CHECK_THROWS_AS(ClosedSetDesc(CsgNode::leaf(FinitePointSet{{}}), box2(-1, -1, 1, 1)),
                    DomainError);
    CHECK_THROWS_AS(ClosedSetDesc(CsgNode::leaf(ClosedBall{Vec(0, 0, 0), 1}), box2(-1, -1, 1, 1)),
                    DomainError);
  }

  TEST_CASE("closure of the interior") {
    auto c = lineplane().closure_of_interior();
    REQUIRE(c);
    CHECK(c->contains(Vec(0, 5)));
    CHECK_FALSE(c->contains(Vec(0, 0)));
    CHECK_FALSE(single_point().closure_of_interior());
    CHECK_FALSE(x_axis().closure_of_interior());
  }

  TEST_CASE("analytic normals and foot points") {
    auto n = unit_disk().candidate_normals(Vec(1, 0));
    REQUIRE(n.size() == 1);
    CHECK(distance(n[0], Vec(1, 0)) < 1e-12);
    auto feet = lineplane().foot_points(Vec(0.5, 1));
    CHECK(feet.size() == 2);
    auto cone = lineplane().complete_normals(Vec(0, 0));
    REQUIRE(cone);
    CHECK(cone->size() == 2);
    CHECK_FALSE(quadrant_point().complete_normals(Vec(0, 0)));
    CHECK_FALSE(quadrant_point().complete_normals(Vec(2, 0)));
    auto edge = quadrant_point().complete_normals(Vec(0, -1));
    REQUIRE(edge);
    CHECK(edge->size() == 1);
  }
}
