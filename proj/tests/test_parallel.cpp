// Copyright 2026 The exsphere Authors.
// SPDX-License-Identifier: Apache-2.0
//
// The OpenMP kernels must reproduce the serial reference exactly.

#include <omp.h>

#include "doctest.h"
#include "exsphere/ballcover.hpp"
#include "exsphere/grid_oracle.hpp"
#include "exsphere/sconvexity.hpp"
#include "fixtures.hpp"

using namespace exsphere;
using namespace exsphere::testing;

namespace {

// Several threads even on a single core, so interleavings actually happen.
struct Threads {
  int saved = omp_get_max_threads();
  Threads() { omp_set_num_threads(4); }
  ~Threads() { omp_set_num_threads(saved); }
};

}  // namespace

TEST_SUITE("parallel") {
  TEST_CASE("grid oracle") {
    Threads t;
    GridOracle a(lineplane(), 0, Exec::serial), b(lineplane(), 0, Exec::parallel);
    REQUIRE(a.node_count() == b.node_count());
    for (std::size_t i = 0; i < a.node_count(); ++i) {
      REQUIRE(a.node_member(i) == b.node_member(i));
    }
    CHECK(a.points() == b.points());
  }

  TEST_CASE("condition check") {
    Threads t;
    CheckOptions o;
    o.samples = 50;
    o.density = 180;
    o.exec = Exec::serial;
    auto s = check_extended_condition(lineplane(), lineplane_radius(), o);
    o.exec = Exec::parallel;
    auto p = check_extended_condition(lineplane(), lineplane_radius(), o);
    CHECK(s.verdict == p.verdict);
    CHECK(s.certificate == p.certificate);
    REQUIRE(s.records.size() == p.records.size());
    for (std::size_t i = 0; i < s.records.size(); ++i) {
      CHECK(s.records[i].a == p.records[i].a);
      CHECK(s.records[i].verdict == p.records[i].verdict);
      REQUIRE(s.records[i].normals.size() == p.records[i].normals.size());
      for (std::size_t k = 0; k < s.records[i].normals.size(); ++k) {
        CHECK(s.records[i].normals[k].realization == p.records[i].normals[k].realization);
      }
    }
    auto ns = sample_unit_normals(quadrant_point(), Vec(0, 0), 360, 0, Exec::serial);
    auto np = sample_unit_normals(quadrant_point(), Vec(0, 0), 360, 0, Exec::parallel);
    REQUIRE(ns.size() == np.size());
    for (std::size_t k = 0; k < ns.size(); ++k) CHECK(ns[k].zeta == np[k].zeta);
  }

  TEST_CASE("ball cover") {
    Threads t;
    auto pts = sample_complement(strip(), 200, 5);
    auto s = build_cover(strip(), strip_radius(), pts, {}, {}, Exec::serial);
    auto p = build_cover(strip(), strip_radius(), pts, {}, {}, Exec::parallel);
    REQUIRE(s.size() == p.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      REQUIRE(s[i].witness.has_value() == p[i].witness.has_value());
      if (!s[i].witness) continue;
      CHECK(s[i].witness->tag == p[i].witness->tag);
      CHECK(s[i].witness->ball->center == p[i].witness->ball->center);
      CHECK(s[i].witness->ball->radius == p[i].witness->ball->radius);
    }
  }

  TEST_CASE("S-convexity, unique projection, openness") {
    Threads t;
    auto set = lineplane();
    auto r = lineplane_radius();
    HullContext ctx(set, r);
    Membership sup = [&](Vec const& x) { return ctx.in_hull_sup(x); };
    SConvexOptions o;
    o.samples = 40;
    o.density = 180;
    o.exec = Exec::serial;
    auto a = is_s_convex(set, sup, o);
    o.exec = Exec::parallel;
    auto b = is_s_convex(set, sup, o);
    CHECK(a.verdict == b.verdict);
    CHECK(a.pairs_tested == b.pairs_tested);
    REQUIRE(a.violation.has_value() == b.violation.has_value());
    if (a.violation) CHECK(a.violation->s == b.violation->s);

    UpOptions u;
    u.rays = 24;
    u.exec = Exec::serial;
    auto ua = check_UP_r(ctx, u);
    u.exec = Exec::parallel;
    auto ub = check_UP_r(ctx, u);
    CHECK(ua.verdict == ub.verdict);
    REQUIRE(ua.located.size() == ub.located.size());
    for (std::size_t i = 0; i < ua.located.size(); ++i) CHECK(ua.located[i].x == ub.located[i].x);

    OpenOptions op;
    op.samples = 15;
    op.exec = Exec::serial;
    auto oa = is_open_O(ctx, op);
    op.exec = Exec::parallel;
    auto ob = is_open_O(ctx, op);
    REQUIRE(oa.records.size() == ob.records.size());
    for (std::size_t i = 0; i < oa.records.size(); ++i) {
      CHECK(oa.records[i].x == ob.records[i].x);
      CHECK(oa.records[i].eta == ob.records[i].eta);
    }
  }

  TEST_CASE("exceptions cross the parallel region") {
    Threads t;
    CHECK_THROWS_AS(for_each_index(Exec::parallel, 100,
                                   [](std::size_t i) {
                                     if (i == 57) throw DomainError("boom");
                                   }),
                    DomainError);
  }
}
