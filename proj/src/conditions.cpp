// Copyright 2026 The exsphere Authors.
// SPDX-License-Identifier: Apache-2.0

#include "exsphere/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "primitive.hpp"

namespace exsphere {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

int rank(Verdict v) {
  switch (v) {
    case Verdict::vacuous:
      return 0;
    case Verdict::holds:
      return 1;
    case Verdict::marginal:
      return 2;
    case Verdict::fails:
      return 3;
  }
  return 3;
}
}  // namespace

char const* to_string(Verdict v) {
  switch (v) {
    case Verdict::holds:
      return "holds";
    case Verdict::fails:
      return "fails";
    case Verdict::marginal:
      return "marginal";
    case Verdict::vacuous:
      return "vacuous";
  }
  return "?";
}

Verdict combine(Verdict a, Verdict b) { return rank(a) >= rank(b) ? a : b; }

char const* to_string(SampleClass c) {
  switch (c) {
    case SampleClass::bdry_int:
      return "bdry-int";
    case SampleClass::not_bdry_int:
      return "not-bdry-int";
    case SampleClass::unclassified:
      return "unclassified";
  }
  return "?";
}

Verdict compare_radius(ClosedSetDesc const& set, ExtReal realization,
                       ExtReal required) {
  if (required.is_infinite()) {
    return realization.is_infinite() ? Verdict::holds : Verdict::fails;
  }
  if (realization.is_infinite()) return Verdict::holds;
  double need = required.value();
  double got = realization.value();
  if (got >= need * (1 - 1e-9)) return Verdict::holds;
  if (got >= need - set.ball_tol()) return Verdict::marginal;
  return Verdict::fails;
}

//---------------------------------------------------------------------------//
namespace {

SampleRecord check_one(ClosedSetDesc const& set, RadiusField const& r,
                       Vec const& a, CheckOptions const& opts) {
  SampleRecord rec;
  rec.a = a;
  if (!set.boundary_contains(a)) {
    rec.note = "not a boundary point";
    return rec;
  }
  rec.label = set.boundary_label(a);
  rec.cls = opts.classify ? opts.classify(a)
                          : (set.in_bdry_of_interior(a) ? SampleClass::bdry_int
                                                        : SampleClass::not_bdry_int);
  if (rec.cls == SampleClass::unclassified) return rec;
  rec.required = r.value(set, a);
  rec.normals = sample_unit_normals(set, a, opts.density, opts.rho_max);
  if (rec.normals.empty()) {
    rec.verdict = Verdict::marginal;
    rec.note = "empty sampled normal cone";
    return rec;
  }
  bool exists = rec.cls == SampleClass::bdry_int;
  std::size_t pick = 0;
  for (std::size_t i = 1; i < rec.normals.size(); ++i) {
    auto const& cur = rec.normals[i].realization;
    auto const& best = rec.normals[pick].realization;
    if (exists ? best < cur : cur < best) pick = i;
  }
  rec.deciding = pick;
  rec.verdict = compare_radius(set, rec.normals[pick].realization, rec.required);
  return rec;
}

}  // namespace

ConditionReport check_extended_condition(ClosedSetDesc const& set,
                                         RadiusField const& r,
                                         std::vector<Vec> const& points,
                                         CheckOptions const& opts) {
  r.require_covers(set);
  ConditionReport rep;
  rep.density = opts.density > 0 ? opts.density : default_density(set.dim());
  rep.seed = opts.seed;
  rep.records = map_indices<SampleRecord>(opts.exec, points.size(), [&](std::size_t i) {
    return check_one(set, r, points[i], opts);
  });
  for (std::size_t i = 0; i < rep.records.size(); ++i) {
    auto const& rec = rep.records[i];
    if (rec.cls == SampleClass::unclassified) {
      ++rep.unclassified;
      continue;
    }
    rep.verdict = combine(rep.verdict, rec.verdict);
    if (rec.verdict == Verdict::fails && !rep.certificate) rep.certificate = i;
  }
  return rep;
}

ConditionReport check_extended_condition(ClosedSetDesc const& set,
                                         RadiusField const& r,
                                         CheckOptions const& opts) {
  std::vector<Vec> pts;
  for (auto const& s : set.sample_boundary(opts.samples, opts.seed)) {
    pts.push_back(s.point);
  }
  return check_extended_condition(set, r, pts, opts);
}

ConditionReport check_exterior_condition_on_closure(ClosedSetDesc const& set,
                                                    RadiusField const& r,
                                                    CheckOptions const& opts) {
  auto closure = set.closure_of_interior();
  if (!closure) {
    ConditionReport rep;
    rep.verdict = Verdict::vacuous;
    rep.seed = opts.seed;
    return rep;
  }
  return check_extended_condition(*closure, r, opts);
}

//---------------------------------------------------------------------------//
RhoValue radius_function(ClosedSetDesc const& set, RadiusField const& r,
                         Vec const& x) {
  if (set.contains(x)) {
    throw DomainError("radius_function: " + to_string(x) + " lies in A");
  }
  RhoValue out;
  out.proj = set.project(x);
  out.dist = out.proj.distance;
  out.rho = ExtReal::infinity();
  std::vector<ExtReal> halves;
  for (auto const& p : out.proj.points) {
    halves.push_back(r.value(set, p).half());
    out.rho = ext_min(out.rho, halves.back());
  }
  // Points are lex-sorted, so the first attaining one is the smallest.
  for (std::size_t i = 0; i < halves.size(); ++i) {
    bool attains = out.rho.is_infinite()
                       ? halves[i].is_infinite()
                       : halves[i].value() <= out.rho.value() * (1 + 1e-12);
    if (attains) {
      out.a_x = out.proj.points[i];
      break;
    }
  }
  return out;
}

ExtReal radius_function_rho(ClosedSetDesc const& set, RadiusField const& r,
                            Vec const& x) {
  return radius_function(set, r, x).rho;
}

//---------------------------------------------------------------------------//
namespace {

constexpr int kLadderTail = 4;

bool ext_close(ExtReal a, ExtReal b, double tol) {
  if (a.is_infinite() || b.is_infinite()) return a == b;
  return std::abs(a.value() - b.value()) <= tol;
}

LscRecord audit_one(ClosedSetDesc const& set, RadiusField const& r,
                    LscProbe const& p, int terms, double tol) {
  LscRecord rec;
  rec.xbar = p.xbar;
  rec.v = p.v;
  rec.rho_bar = radius_function_rho(set, r, p.xbar);
  rec.liminf = ExtReal::infinity();
  rec.limsup = ExtReal::finite(0);

  // x_k for k = 2^j, stopping before the steps fall inside the projection
  // cluster band, where both sides of a ridge look alike.
  double floor = 100 * set.cluster_tol();
  std::vector<ExtReal> vals;
  for (int j = 0; j < std::min(terms, 60); ++j) {
    double k = std::ldexp(1.0, j);
    if (j > 0 && p.v.norm() / k < floor) break;
    Vec xk = p.xbar + p.v / k;
    if (set.contains(xk)) continue;
    vals.push_back(radius_function_rho(set, r, xk));
  }
  if (vals.empty()) return rec;

  // Halving the step, a continuous rho moves linearly: 2 f(t/2) - f(t) is
  // the limit up to second order. A jump keeps its offset.
  auto push = [&](ExtReal v) {
    rec.liminf = ext_min(rec.liminf, v);
    if (rec.limsup < v) rec.limsup = v;
  };
  if (vals.size() == 1) {
    push(vals[0]);
  } else {
    std::size_t first = vals.size() > kLadderTail ? vals.size() - kLadderTail : 1;
    for (std::size_t i = first; i < vals.size(); ++i) {
      auto const& f1 = vals[i - 1];
      auto const& f2 = vals[i];
      if (f1.is_infinite() || f2.is_infinite()) {
        push(f2);
      } else {
        push(ExtReal::finite(std::max(0.0, 2 * f2.value() - f1.value())));
      }
    }
  }
  rec.lsc = rec.rho_bar.is_infinite()
                ? rec.liminf.is_infinite()
                : (rec.liminf.is_infinite() ||
                   rec.liminf.value() >= rec.rho_bar.value() - tol);
  rec.discontinuous = !ext_close(rec.liminf, rec.rho_bar, tol) ||
                      !ext_close(rec.limsup, rec.rho_bar, tol);
  return rec;
}

}  // namespace

LscReport lsc_audit(ClosedSetDesc const& set, RadiusField const& r,
                    std::vector<LscProbe> const& probes,
                    LscOptions const& opts) {
  if (opts.terms < 2) throw DomainError("lsc_audit needs at least 2 terms");
  std::vector<LscProbe> all = probes;
  if (opts.random_probes > 0) {
    std::mt19937_64 rng(opts.seed);
    for (auto const& x : sample_complement(set, opts.random_probes, opts.seed)) {
      all.push_back({x, (1e-2 * set.diameter()) * detail::random_unit(set.dim(), rng)});
    }
  }
  double tol = 1e-6 * set.diameter();
  LscReport rep;
  rep.records = map_indices<LscRecord>(opts.exec, all.size(), [&](std::size_t i) {
    return audit_one(set, r, all[i], opts.terms, tol);
  });
  for (auto const& rec : rep.records) {
    rep.lsc = rep.lsc && rec.lsc;
    if (rec.discontinuous) ++rep.discontinuities;
  }
  return rep;
}

//---------------------------------------------------------------------------//
namespace {

CoverRecord verify_one(ClosedSetDesc const& set, RhoFn const& rho_fn,
                       WitnessFn const& witness_fn, Vec const& x,
                       std::vector<double> const& deltas) {
  CoverRecord rec;
  rec.x = x;
  double tol = set.ball_tol();
  std::ostringstream diag;
  try {
    ExtReal rho = rho_fn(x);
    WitnessBall w = witness_fn(x);
    rec.witness = w;
    if (rho.is_finite()) {
      if (!w.ball) {
        diag << "finite rho(x) but no ball";
      } else {
        double rad = w.ball->radius;
        double dx = distance(x, w.ball->center);
        double dA = set.distance(w.ball->center);
        if (std::abs(rad - rho.value()) > tol) {
          diag << "radius " << rad << " differs from rho(x) " << rho.value();
        } else if (dx > rho.value() + tol) {
          diag << "x lies outside the ball (|x-y| = " << dx << ")";
        } else if (dA < rho.value() - tol) {
          diag << "ball meets A (d_A(y) = " << dA << ")";
        }
      }
    } else {
      if (!w.direction) {
        diag << "infinite rho(x) but no direction";
      } else {
        for (double d : deltas) {
          double dA = set.distance(x + d * *w.direction);
          if (dA < d - tol) {
            diag << "delta ball " << d << " meets A (d_A = " << dA << ")";
            break;
          }
        }
      }
    }
  } catch (std::exception const& e) {
    diag << "witness construction failed: " << e.what();
  }
  rec.diagnostics = diag.str();
  rec.ok = rec.diagnostics.empty();
  return rec;
}

}  // namespace

CoverReport verify_union_of_balls(ClosedSetDesc const& set, RhoFn const& rho,
                                  WitnessFn const& witness,
                                  std::vector<Vec> const& points,
                                  std::vector<double> const& deltas, Exec exec) {
  CoverReport rep;
  rep.records = map_indices<CoverRecord>(exec, points.size(), [&](std::size_t i) {
    return verify_one(set, rho, witness, points[i], deltas);
  });
  for (auto const& rec : rep.records) {
    if (!rec.ok) ++rep.violations;
  }
  rep.verdict = rep.violations ? Verdict::fails : Verdict::holds;
  if (points.empty()) rep.verdict = Verdict::vacuous;
  return rep;
}

//---------------------------------------------------------------------------//
std::vector<Vec> touching_conflicts(ClosedSetDesc const& set,
                                    RadiusField const& r) {
  std::vector<Vec> out;
  auto lv = set.leaves();
  double spacing = 4 * set.grid_h();
  double near = 2 * spacing;
  double tol = set.cluster_tol();
  auto lattice = set.boundary_lattice(spacing);
  for (std::size_t i = 0; i < lv.size(); ++i) {
    for (std::size_t j = 0; j < lv.size(); ++j) {
      if (i == j || lv[i]->label == lv[j]->label) continue;
      for (auto const& s : lattice) {
        if (s.label != lv[i]->label) continue;
        if (detail::leaf_boundary_distance(lv[i]->shape, s.point) > tol) continue;
        if (detail::leaf_distance(lv[j]->shape, s.point) > near) continue;
        Vec q = s.point;
        for (int it = 0; it < 100; ++it) {
          q = detail::leaf_project(lv[j]->shape, q).points.front();
          q = detail::leaf_project(lv[i]->shape, q).points.front();
        }
        if (detail::leaf_distance(lv[j]->shape, q) > tol) continue;
        if (!set.boundary_contains(q)) continue;
        ExtReal ri = r.at(lv[i]->label, q);
        ExtReal rj = r.at(lv[j]->label, q);
        bool differ = ri.is_infinite() != rj.is_infinite() ||
                      (ri.is_finite() &&
                       std::abs(ri.value() - rj.value()) >
                           1e-9 * std::max(1.0, ri.value()));
        if (!differ) continue;
        bool dup = false;
        for (auto const& o : out) {
          if (distance(o, q) <= spacing) dup = true;
        }
        if (!dup) out.push_back(q);
      }
    }
  }
  return out;
}

std::vector<Vec> sample_complement(ClosedSetDesc const& set, int count,
                                   std::uint64_t seed) {
  std::vector<Vec> out;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Box const& box = set.box();
  for (long i = 0; i < 1000L * count && static_cast<int>(out.size()) < count; ++i) {
    Vec p = box.lo;
    for (int k = 0; k < box.dim(); ++k) {
      p[k] = box.lo[k] + u(rng) * (box.hi[k] - box.lo[k]);
    }
    if (!set.contains(p)) out.push_back(p);
  }
  return out;
}

}  // namespace exsphere
