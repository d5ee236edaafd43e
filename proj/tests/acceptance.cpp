// Copyright 2026 The exsphere Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance run: one PASS/FAIL line per criterion, each with its runtime
// budget. Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "exsphere/ballcover.hpp"
#include "exsphere/grid_oracle.hpp"
#include "exsphere/scene.hpp"
#include "exsphere/sconvexity.hpp"
#include "fixtures.hpp"

using namespace exsphere;
using namespace exsphere::testing;

namespace {

// Tolerances, fixed here so that a run cannot loosen them.
constexpr double kRhoTol = 1e-9;
constexpr double kClusterTol = 1e-6;
constexpr double kRealizationTol = 1e-6;
constexpr double kCoverTol = 1e-6;
constexpr double kContainRel = 1e-7;

struct Outcome {
  bool ok = true;
  std::ostringstream why;

  void expect(bool cond, std::string const& what) {
    if (!cond && ok) why << what;
    ok = ok && cond;
  }
};

struct Criterion {
  int id;
  std::string name;
  double budget_s;
  std::function<void(Outcome&)> run;
};

std::string scene_path(char const* name) {
  return std::string(EXSPHERE_SCENE_DIR) + "/" + name;
}

std::string str(Vec const& v) { return to_string(v); }

//---------------------------------------------------------------------------//
void strip_radius_function(Outcome& o) {
  auto sc = load_scene(scene_path("strip.scene"));
  auto rho = radius_function_rho(sc.set, sc.radius, Vec(0, 1));
  o.expect(rho.is_finite() && std::abs(rho.value() - 0.25) <= kRhoTol,
           "rho(0,1) = " + to_string(rho));
  for (int n = 2; n <= 10; ++n) {
    auto v = radius_function_rho(sc.set, sc.radius, Vec(0, 1 + 1.0 / n));
    o.expect(v.is_finite() && std::abs(v.value() - 0.5) <= kRhoTol,
             "rho(0,1+1/" + std::to_string(n) + ") = " + to_string(v));
  }
  LscOptions lo;
  lo.random_probes = 50;
  auto rep = lsc_audit(sc.set, sc.radius, {{Vec(0, 1), Vec(0, 1)}}, lo);
  o.expect(rep.lsc, "lower semicontinuity violated");
  o.expect(rep.records[0].discontinuous, "no discontinuity flagged at (0,1)");
}

void strip_condition_and_cover(Outcome& o) {
  auto sc = load_scene(scene_path("strip.scene"));
  CheckOptions co;
  co.samples = 200;
  co.density = 720;
  auto rep = check_extended_condition(sc.set, sc.radius, co);
  o.expect(rep.verdict == Verdict::holds,
           std::string("condition verdict ") + to_string(rep.verdict));

  auto pts = sample_complement(sc.set, 1000, 2026);
  auto cover = build_cover(sc.set, sc.radius, pts, {});
  GridOracle grid(sc.set);
  int good = 0;
  for (auto const& at : cover) {
    if (!at.witness || !at.witness->finite()) continue;
    auto const& b = *at.witness->ball;
    bool through = distance(b.center, at.x) <= b.radius + sc.set.ball_tol();
    bool clear = sc.set.distance(b.center) >= b.radius - sc.set.ball_tol() &&
                 grid.distance(b.center) >= b.radius - 2 * grid.h();
    if (through && clear) ++good;
  }
  o.expect(good == 1000, "verified witnesses " + std::to_string(good) + "/1000");
}

void lineplane_memberships(Outcome& o) {
  auto sc = load_scene(scene_path("lineplane.scene"));
  HullContext ctx(sc.set, sc.radius);
  for (auto p : {Vec(0, 0.5), Vec(0, -0.5), Vec(0, 2), Vec(0, 5)}) {
    o.expect(ctx.in_hull_r(p), "r-hull misses " + str(p));
  }
  for (auto p : {Vec(0, 1), Vec(0, 1.5), Vec(0, -1)}) {
    o.expect(!ctx.in_hull_r(p), "r-hull contains " + str(p));
  }
  for (auto p : {Vec(0, 0.5), Vec(0, -0.5), Vec(0, 2), Vec(0, 5), Vec(0, 1), Vec(0, 1.5),
                 Vec(0, -1)}) {
    o.expect(ctx.in_hull_sup(p), "sup-hull misses " + str(p));
  }
  o.expect(ctx.in_O(Vec(0, 0.5)) && ctx.in_O(Vec(0, -0.5)), "O misses (0,+-0.5)");
  o.expect(!ctx.in_O(Vec(0, 0)) && !ctx.in_O(Vec(0, 1)), "O contains (0,0) or (0,1)");
  auto p = sc.set.project(Vec(0, 2));
  o.expect(p.cluster_count() == 2, "projection of (0,2) has " +
                                       std::to_string(p.cluster_count()) + " clusters");
  if (p.cluster_count() == 2) {
    o.expect(distance(p.points[0], Vec(0, 0)) <= kClusterTol &&
                 distance(p.points[1], Vec(0, 4)) <= kClusterTol,
             "projection points " + str(p.points[0]) + ", " + str(p.points[1]));
  }
}

void lineplane_harness(Outcome& o) {
  auto sc = load_scene(scene_path("lineplane.scene"));
  auto h = equivalence_harness(sc.set, sc.radius);
  o.expect(h.i == Verdict::fails && h.ii == Verdict::fails && h.iii == Verdict::fails,
           std::string("verdicts ") + to_string(h.i) + "/" + to_string(h.ii) + "/" +
               to_string(h.iii));
  o.expect(h.consistent, "inconsistent verdicts");

  o.expect(h.up.certificate.has_value(), "no unique-projection certificate");
  if (h.up.certificate) {
    auto const& rec = h.up.located[*h.up.certificate];
    HullContext ctx(sc.set, sc.radius);
    // A boundary point of the r-hull: members and non-members arbitrarily close.
    double eps = 1e-6 * sc.set.diameter();
    bool near_in = false, near_out = false;
    for (auto d : direction_sweep(2, 64)) {
      (ctx.in_hull_r(rec.x + eps * d) ? near_in : near_out) = true;
    }
    o.expect(near_in && near_out, "certificate " + str(rec.x) + " is not on the hull boundary");
    o.expect(sc.set.project(rec.x).cluster_count() == 2,
             "certificate " + str(rec.x) + " lacks two projections");
  }

  o.expect(h.condition.certificate.has_value(), "no condition certificate");
  if (h.condition.certificate) {
    auto const& rec = h.condition.records[*h.condition.certificate];
    auto const& n = rec.normals[rec.deciding.value()];
    // Oracle: the sphere tangent at (x0, 4) from below reaches the line y = 0
    // when its diameter equals the gap to the line.
    Vec on_line(rec.a[0], 0);
    double oracle = distance(rec.a, on_line) / 2;
    o.expect(std::abs(rec.a[1] - 4) <= kClusterTol, "certificate base " + str(rec.a));
    o.expect(n.realization.is_finite() &&
                 std::abs(n.realization.value() - oracle) <= kRealizationTol,
             "realization " + to_string(n.realization) + " vs " + std::to_string(oracle));
    // And the radius-3 ball at (x0, 1) does meet the line.
    o.expect(sc.set.distance(Vec(rec.a[0], 1)) < 3, "radius-3 ball misses the line");
  }
}

void constant_radius_covers(Outcome& o) {
  struct Case {
    char const* name;
    ClosedSetDesc set;
    double r;
  };
  std::vector<Case> cases;
  cases.push_back({"disk", unit_disk(), 2});
  ClosedSetDesc s = strip();
  cases.push_back({"strip", s, 1});
  cases.push_back({"hole", hole(), 1});
  for (auto const& c : cases) {
    auto field = uniform(c.r);
    auto cond = check_extended_condition(c.set, field, CheckOptions{});
    o.expect(cond.verdict == Verdict::holds, std::string(c.name) + ": condition " +
                                                 to_string(cond.verdict));
    auto pts = sample_complement(c.set, 1000, 7);
    RhoFn rho = [&](Vec const& x) { return radius_function_rho(c.set, field, x); };
    WitnessFn wit = [&](Vec const& x) { return construct_witness(c.set, field, x, {}); };
    auto rep = verify_union_of_balls(c.set, rho, wit, pts, {});
    o.expect(rep.verdict == Verdict::holds,
             std::string(c.name) + ": " + std::to_string(rep.violations) + " violations");
    for (auto const& rec : rep.records) {
      if (!rec.witness || !rec.witness->finite()) continue;
      auto const& b = *rec.witness->ball;
      o.expect(std::abs(b.radius - c.r / 2) <= kCoverTol,
               std::string(c.name) + ": radius " + std::to_string(b.radius));
      o.expect(distance(b.center, rec.x) <= b.radius + kCoverTol &&
                   c.set.distance(b.center) >= b.radius - kCoverTol,
               std::string(c.name) + ": ball at " + str(b.center) + " fails the oracle");
    }
  }
}

//---------------------------------------------------------------------------//
// Property suites.

std::vector<ClosedSetDesc> nonconvex_scenes() {
  std::vector<ClosedSetDesc> s;
  s.push_back(strip());
  s.push_back(lineplane());
  s.push_back(hole());
  s.push_back(quadrant_point());
  return s;
}

struct Sampled {
  ClosedSetDesc const* set;
  ProxNormal n;
};

std::vector<Sampled> sampled_normals(std::vector<ClosedSetDesc> const& sets, std::size_t want) {
  std::vector<Sampled> out;
  std::uint64_t seed = 1;
  while (out.size() < want) {
    for (auto const& s : sets) {
      for (auto const& b : s.sample_boundary(25, seed)) {
        for (auto const& n : sample_unit_normals(s, b.point, 24)) out.push_back({&s, n});
      }
    }
    ++seed;
  }
  out.resize(want);
  return out;
}

void property_suites(Outcome& o) {
  auto sets = nonconvex_scenes();
  auto normals = sampled_normals(sets, 1000);
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0, 1);

  // Realization is monotone in the radius.
  int mono_bad = 0;
  for (auto const& sn : normals) {
    double top = sn.n.realization.is_infinite() ? 10 : sn.n.realization.value();
    double rho = std::max(kRhoMin, top * u(rng));
    if (!is_realized_by_sphere(*sn.set, sn.n.base, sn.n.zeta, rho)) ++mono_bad;
  }
  o.expect(mono_bad == 0, std::to_string(mono_bad) + " monotonicity failures");

  // Sphere realization agrees with the proximal inequality at sigma = 1/(2 rho).
  int agree_bad = 0;
  std::vector<GridOracle> grids;
  for (auto const& s : sets) grids.emplace_back(s);
  for (std::size_t i = 0; i < normals.size(); ++i) {
    auto const& sn = normals[i];
    std::size_t which = static_cast<std::size_t>(sn.set - sets.data());
    double top = sn.n.realization.is_infinite() ? 4 : sn.n.realization.value();
    double rho = std::max(kRhoMin, top * (0.2 + 0.8 * u(rng)));
    bool sphere = is_realized_by_sphere(*sn.set, sn.n.base, sn.n.zeta, rho);
    bool ineq = is_proximal_normal(*sn.set, grids[which], sn.n.base, sn.n.zeta,
                                   1 / (2 * rho), 200, i)
                    .holds;
    if (sphere != ineq) ++agree_bad;
  }
  o.expect(agree_bad == 0, std::to_string(agree_bad) + " inequality disagreements");

  // Points along a realized normal project back to its base.
  int along_bad = 0;
  for (auto const& sn : normals) {
    double top = sn.n.realization.is_infinite() ? 2 : sn.n.realization.value();
    Vec x = sn.n.base + (top * (0.05 + 0.9 * u(rng))) * sn.n.zeta;
    auto p = sn.set->project(x);
    if (p.cluster_count() != 1 || distance(p.points[0], sn.n.base) > sn.set->cluster_tol()) {
      ++along_bad;
    }
  }
  o.expect(along_bad == 0, std::to_string(along_bad) + " along-normal projection failures");

  // Hull inclusions: A_UP(r) in A^UP, O in the r-hull, r-hull in the sup-hull.
  int incl_bad = 0;
  std::vector<std::pair<ClosedSetDesc, RadiusField>> scenes;
  scenes.emplace_back(strip(), strip_radius());
  scenes.emplace_back(lineplane(), lineplane_radius());
  scenes.emplace_back(quadrant_point(), uniform(1.5));
  for (auto const& [s, r] : scenes) {
    HullContext ctx(s, r);
    for (auto const& x : sample_complement(s, 1000, 3)) {
      bool hr = ctx.in_hull_r(x), hs = ctx.in_hull_sup(x);
      bool up = ctx.in_A_UP(x), upr = ctx.in_A_UP_r(x), op = ctx.in_O(x);
      if ((upr && !up) || (op && !hr) || (hr && !hs) || (hs != (hr || up))) ++incl_bad;
    }
  }
  o.expect(incl_bad == 0, std::to_string(incl_bad) + " hull inclusion failures");

  // The lens ball lies in B(x; rho_x) u B(y; r) for admissible triples.
  std::size_t lens_bad = 0;
  std::normal_distribution<double> g;
  for (int geom = 0; geom < 100; ++geom) {
    double rho_x = 0.05 + 2 * u(rng), r = 0.05 + 2 * u(rng), d = r + 2 * u(rng);
    Vec x(4 * u(rng) - 2, 4 * u(rng) - 2);
    Vec dir = Vec(g(rng), g(rng)).normalized();
    Vec y = x + d * dir;
    double re = rho_epsilon(rho_x, d, r);
    Vec c = x + re * dir;
    double tol = kContainRel * (distance(x, y) + rho_x + r + re);
    for (int k = 0; k < 10000; ++k) {
      double rad = re * std::sqrt(u(rng)), t = 2 * M_PI * u(rng);
      Vec p = c + Vec(rad * std::cos(t), rad * std::sin(t));
      if (distance(p, x) > rho_x + tol && distance(p, y) > r + tol) ++lens_bad;
    }
  }
  o.expect(lens_bad == 0, std::to_string(lens_bad) + " lens containment violations");
}

void convex_baseline(Outcome& o) {
  Membership all = [](Vec const&) { return true; };
  auto inf = uniform(INFINITY);
  for (auto const& name : {"ball.scene", "ball3d.scene"}) {
    auto sc = load_scene(scene_path(name));
    auto cv = is_s_convex(sc.set, all);
    o.expect(cv.verdict == Verdict::holds,
             std::string(name) + ": S-convexity " + to_string(cv.verdict));
    CheckOptions co;
    co.samples = sc.samples.boundary;
    auto cond = check_extended_condition(sc.set, inf, co);
    o.expect(cond.verdict == Verdict::holds,
             std::string(name) + ": condition " + to_string(cond.verdict));
    for (auto const& rec : cond.records) {
      if (!rec.normals.empty() && rec.normals[0].realization.is_finite()) {
        o.expect(false, std::string(name) + ": finite realization at " + str(rec.a));
      }
    }
  }
}

}  // namespace

int main() {
  std::vector<Criterion> criteria{
      {1, "strip radius function and semicontinuity", 1, strip_radius_function},
      {2, "strip condition and 1000 oracle-verified witnesses", 30, strip_condition_and_cover},
      {3, "line-plane hull memberships and projections", 5, lineplane_memberships},
      {4, "line-plane equivalence harness certificates", 30, lineplane_harness},
      {5, "constant-radius covers use radius r/2", 30, constant_radius_covers},
      {6, "property suites", 120, property_suites},
      {7, "convex baseline", 10, convex_baseline},
  };
  int failed = 0;
  for (auto const& c : criteria) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (std::exception const& e) {
      o.expect(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget_s) {
      o.expect(false, "over budget");
    }
    std::printf("%s criterion %d: %s (%.2f s, budget %.0f s)%s%s\n", o.ok ? "PASS" : "FAIL",
                c.id, c.name.c_str(), secs, c.budget_s, o.ok ? "" : ": ",
                o.ok ? "" : o.why.str().c_str());
    if (!o.ok) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
