// Copyright 2026 The exsphere Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>

#include "doctest.h"
#include "exsphere/geom.hpp"

using namespace exsphere;

TEST_SUITE("geom") {
  TEST_CASE("vector arithmetic and norms") {
    Vec a(3, 4);
    CHECK(a.norm() == doctest::Approx(5));
    CHECK(a.normalized() == Vec(0.6, 0.8));
    CHECK(a + Vec(1, 1) == Vec(4, 5));
    CHECK(2 * a == Vec(6, 8));
    CHECK(Vec(1, 2, 3).dot(Vec(4, 5, 6)) == 32);
    CHECK(distance(Vec(0, 0), Vec(3, 4)) == 5);
    CHECK_THROWS_AS(Vec(1, 2) + Vec(1, 2, 3), DomainError);
    CHECK(lex_less(Vec(0, 5), Vec(1, 0)));
    CHECK(lex_less(Vec(1, 0), Vec(1, 2)));
    CHECK_FALSE(lex_less(Vec(1, 2), Vec(1, 2)));
  }

  TEST_CASE("unit vectors are renormalized within 1e-6 and rejected beyond") {
    CHECK(require_unit(Vec(1, 0)) == Vec(1, 0));
    Vec v = require_unit(Vec(1 + 5e-7, 0));
    CHECK(v.norm() == doctest::Approx(1).epsilon(1e-15));
    CHECK_THROWS_AS(require_unit(Vec(1.1, 0)), DomainError);
    CHECK_THROWS_AS(require_unit(Vec(0, 0)), DomainError);
  }

  TEST_CASE("ext_min treats +inf as the top element") {
    auto inf = ExtReal::infinity();
    CHECK(ext_min(inf, ExtReal::finite(0.5)) == ExtReal::finite(0.5));
    CHECK(ext_min(inf, inf).is_infinite());
    CHECK(ext_min(ExtReal::finite(0.25), ExtReal::finite(0.5)) == ExtReal::finite(0.25));
    CHECK(ExtReal::finite(3) < inf);
    CHECK(inf.half().is_infinite());
    CHECK(ExtReal::finite(1).half() == ExtReal::finite(0.5));
    CHECK_THROWS_AS(ExtReal::finite(-1), DomainError);
    CHECK(to_string(inf) == "inf");
  }

  TEST_CASE("closed and open balls") {
    Ball b(Vec(0, 0), 1);
    CHECK(b.contains(Vec(1, 0)));
    Ball o(Vec(0, 0), 1, Closedness::open);
    CHECK_FALSE(o.contains(Vec(1, 0)));
    CHECK(o.contains(Vec(0.5, 0)));
    CHECK_THROWS_AS(Ball(Vec(0, 0), 0), DomainError);
    CHECK_THROWS_AS(Segment(Vec(1, 1), Vec(1, 1)), DomainError);
    CHECK(Segment(Vec(0, 0), Vec(2, 0)).at(0.25) == Vec(0.5, 0));
  }

  TEST_CASE("sphere-line roots: worked values") {
    auto r = sphere_line_roots(Vec(0, 0), Vec(1, 0), Vec(2, 0), 1);
    REQUIRE(r);
    CHECK(r->first == doctest::Approx(1));
    CHECK(r->second == doctest::Approx(3));
    CHECK_FALSE(sphere_line_roots(Vec(0, 0), Vec(0, 1), Vec(3, 0), 1));
    // Tangent line: the discriminant vanishes, no interior crossing.
    CHECK_FALSE(sphere_line_roots(Vec(0, 0), Vec(1, 0), Vec(1, 1), 1));
    CHECK_THROWS_AS(sphere_line_roots(Vec(0, 0), Vec(2, 0), Vec(1, 1), 1), DomainError);
  }

  TEST_CASE("sphere-line roots: sign pattern and product of roots") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-2, 2);
    int checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
      Vec x(u(rng), u(rng)), c(u(rng), u(rng));
      double ang = u(rng) * M_PI;
      Vec xi(std::cos(ang), std::sin(ang));
      double eps = 0.2 + std::abs(u(rng));
      auto r = sphere_line_roots(x, xi, c, eps);
      // Independent reduced discriminant.
      double b = (x - c).dot(xi);
      double disc = b * b - ((x - c).norm2() - eps * eps);
      CHECK(r.has_value() == (disc > kDiscriminantFloor));
      if (!r) continue;
      ++checked;
      CHECK(r->first * r->second ==
            doctest::Approx((x - c).norm2() - eps * eps).epsilon(1e-9));
      for (int k = 1; k <= 100; ++k) {
        double t = r->first + (r->second - r->first) * k / 101.0;
        CHECK(distance(x + t * xi, c) < eps);
      }
      for (double t : {r->first - 0.5, r->first - 1e-3, r->second + 1e-3, r->second + 0.5}) {
        CHECK(distance(x + t * xi, c) >= eps);
      }
    }
    CHECK(checked > 20);
  }
}
