// Copyright 2026 The exsphere Authors.
// SPDX-License-Identifier: Apache-2.0

#include "exsphere/sconvexity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "exsphere/proximal.hpp"
#include "primitive.hpp"

namespace exsphere {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

bool safe_bdry_int(ClosedSetDesc const& set, Vec const& a) {
  try {
    return set.in_bdry_of_interior(a);
  } catch (DomainError const&) {
    return false;
  }
}
}  // namespace

//---------------------------------------------------------------------------//
HullContext::HullContext(ClosedSetDesc const& set, RadiusField const& r,
                         SetOptions opts)
    : set_(&set), r_(&r), opts_(opts) {
  r.require_covers(set);
}

bool HullContext::off_interior_close(Vec const& x,
                                     ProjectionResult const& p) const {
  for (auto const& a : p.points) {
    if (safe_bdry_int(*set_, a)) continue;
    ExtReal ra = r_->value(*set_, a);
    if (ra.is_infinite() || distance(x, a) < ra.value()) return true;
  }
  return false;
}

namespace {

bool realizes_radius(ClosedSetDesc const& set, Vec const& a, Vec const& zeta,
                     ExtReal need, double rho_max) {
  if (!is_realized_by_sphere(set, a, zeta, kRhoMin)) return false;
  return compare_radius(set, realization_radius(set, a, zeta, rho_max), need) ==
         Verdict::holds;
}

bool bdry_r_unchecked(ClosedSetDesc const& set, RadiusField const& r,
                      SetOptions const& o, Vec const& a) {
  ExtReal need = r.value(set, a);
  // Analytic normals settle most points without the full sweep.
  for (auto const& n : set.candidate_normals(a)) {
    if (realizes_radius(set, a, n, need, o.rho_max)) return true;
  }
  for (auto const& pn : sample_unit_normals(set, a, o.density, o.rho_max)) {
    if (compare_radius(set, pn.realization, need) == Verdict::holds) return true;
  }
  return false;
}

}  // namespace

bool HullContext::interior_unrealized(ProjectionResult const& p) const {
  for (auto const& a : p.points) {
    if (!safe_bdry_int(*set_, a)) continue;
    if (!bdry_r_unchecked(*set_, *r_, opts_, a)) return true;
  }
  return false;
}

std::optional<double> HullContext::unique_gap(Vec const& x,
                                              ProjectionResult const& p,
                                              bool capped) const {
  if (p.continuum || p.cluster_count() != 1) return std::nullopt;
  Vec const& a = p.points.front();
  double d = distance(x, a);
  if (!(d > 0)) return std::nullopt;
  Vec zeta = (x - a) / d;
  ExtReal rho;
  try {
    rho = realization_radius(*set_, a, zeta, opts_.rho_max);
  } catch (NoWitnessError const&) {
    return std::nullopt;
  }
  if (capped) rho = ext_min(rho, r_->value(*set_, a));
  return rho.is_infinite() ? kInf : rho.value() - d;
}

bool HullContext::in_O(Vec const& x) const {
  if (set_->contains(x)) return false;
  return off_interior_close(x, set_->project(x));
}

bool HullContext::in_P(Vec const& x) const {
  if (set_->contains(x)) return false;
  return interior_unrealized(set_->project(x));
}

bool HullContext::in_bdry_r(Vec const& a) const {
  if (!set_->in_bdry_of_interior(a)) {
    throw DomainError("in_bdry_r: " + to_string(a) +
                      " is not on the boundary of int A");
  }
  return bdry_r_unchecked(*set_, *r_, opts_, a);
}

bool HullContext::in_A_UP(Vec const& x) const {
  if (set_->contains(x)) return false;
  auto g = unique_gap(x, set_->project(x), false);
  return g && *g > 0;
}

bool HullContext::in_A_UP_r(Vec const& x) const {
  if (set_->contains(x)) return false;
  auto g = unique_gap(x, set_->project(x), true);
  return g && *g > 0;
}

bool HullContext::in_hull_r(Vec const& x) const {
  if (set_->contains(x)) return true;
  auto p = set_->project(x);
  auto g = unique_gap(x, p, true);
  if (g && *g > 0) return true;
  return off_interior_close(x, p) || interior_unrealized(p);
}

bool HullContext::in_hull_sup(Vec const& x) const {
  if (set_->contains(x)) return true;
  auto p = set_->project(x);
  auto g = unique_gap(x, p, false);
  if (g && *g > 0) return true;
  return off_interior_close(x, p) || interior_unrealized(p);
}

//---------------------------------------------------------------------------//
namespace {

double cross2(Vec const& a, Vec const& b) { return a[0] * b[1] - a[1] * b[0]; }

// Representative projection used to notice jumps of the nearest point.
std::optional<Vec> nearest_rep(ClosedSetDesc const& set, Vec const& p) {
  if (set.contains(p)) return std::nullopt;
  return set.project(p).points.front();
}

}  // namespace

std::optional<Vec> segment_meet(Vec const& p1, Vec const& q1, Vec const& p2,
                                Vec const& q2, double tol) {
  Vec d1 = q1 - p1, d2 = q2 - p2;
  if (p1.dim() == 2) {
    double den = cross2(d1, d2);
    Vec w = p2 - p1;
    double scale = d1.norm() * d2.norm();
    if (std::abs(den) > 1e-12 * scale) {
      double s = cross2(w, d2) / den;
      double t = cross2(w, d1) / den;
      if (s < 0 || s > 1 || t < 0 || t > 1) return std::nullopt;
      return p1 + s * d1;
    }
    double l1 = d1.norm();
    if (std::abs(cross2(w, d1)) > tol * l1) return std::nullopt;
    double s0 = w.dot(d1) / (l1 * l1);
    double s1 = (q2 - p1).dot(d1) / (l1 * l1);
    double lo = std::max(0.0, std::min(s0, s1));
    double hi = std::min(1.0, std::max(s0, s1));
    if (lo > hi) return std::nullopt;
    return p1 + (0.5 * (lo + hi)) * d1;
  }
  // Closest points of two 3D segments.
  Vec r = p1 - p2;
  double a = d1.dot(d1), e = d2.dot(d2), f = d2.dot(r);
  double c = d1.dot(r), b = d1.dot(d2);
  double den = a * e - b * b;
  double s = den > 1e-14 * a * e ? std::clamp((b * f - c * e) / den, 0.0, 1.0) : 0.0;
  double t = (b * s + f) / e;
  if (t < 0) {
    t = 0;
    s = std::clamp(-c / a, 0.0, 1.0);
  } else if (t > 1) {
    t = 1;
    s = std::clamp((b - c) / a, 0.0, 1.0);
  }
  Vec c1 = p1 + s * d1, c2 = p2 + t * d2;
  if (distance(c1, c2) >= tol) return std::nullopt;
  return 0.5 * (c1 + c2);
}

double exit_length(ClosedSetDesc const& set, Membership const& in_s,
                   Vec const& a, Vec const& zeta) {
  double cap = 2 * set.diameter();
  double step = set.diameter() / 256;
  double jump = 4 * step + set.cluster_tol();
  auto at = [&](double t) { return a + t * zeta; };

  double prev = 0;
  std::optional<Vec> prev_rep;
  for (double t = step; prev < cap; t = std::min(cap, t + step)) {
    Vec p = at(t);
    if (!in_s(p)) {
      double lo = prev, hi = t;
      for (int i = 0; i < 60; ++i) {
        double mid = 0.5 * (lo + hi);
        (in_s(at(mid)) ? lo : hi) = mid;
      }
      return lo;
    }
    auto rep = nearest_rep(set, p);
    if (rep && prev_rep && distance(*rep, *prev_rep) > jump) {
      // The nearest point jumped: find the ridge and test S there.
      double lo = prev, hi = t;
      Vec rlo = *prev_rep, rhi = *rep;
      for (int i = 0; i < 60; ++i) {
        double mid = 0.5 * (lo + hi);
        auto rm = nearest_rep(set, at(mid));
        if (!rm) break;
        if (distance(*rm, rlo) <= distance(*rm, rhi)) {
          lo = mid;
          rlo = *rm;
        } else {
          hi = mid;
          rhi = *rm;
        }
      }
      // Near the ridge both nearest points fall in one cluster band, so
      // either end of the bracket may be the multi-projection point.
      if (distance(rlo, rhi) > 10 * set.cluster_tol() &&
          (!in_s(at(lo)) || !in_s(at(hi)))) {
        return lo;
      }
    }
    prev_rep = rep;
    prev = t;
    if (t >= cap) break;
  }
  return cap;
}

//---------------------------------------------------------------------------//
namespace {

struct SegmentSet {
  std::vector<NormalSegment> segs;
};

std::vector<NormalSegment> segments_at(ClosedSetDesc const& set,
                                       Membership const& in_s, Vec const& a,
                                       SConvexOptions const& opts) {
  auto normals = sample_unit_normals(set, a, opts.density);
  std::vector<NormalSegment> out;
  std::size_t n = normals.size();
  std::size_t k = std::min<std::size_t>(n, static_cast<std::size_t>(
                                                 std::max(1, opts.normals_per_point)));
  for (std::size_t i = 0; i < k; ++i) {
    auto const& pn = normals[i * n / k];
    double len = exit_length(set, in_s, a, pn.zeta);
    if (len <= set.cluster_tol()) continue;
    out.push_back({a, pn.zeta, len, true});
  }
  return out;
}

bool meets_in_s(ClosedSetDesc const& set, Membership const& in_s,
                NormalSegment const& u, NormalSegment const& v, Vec& s) {
  double ctol = set.cluster_tol();
  if (distance(u.a, v.a) <= ctol) return false;
  auto m = segment_meet(u.a, u.end(), v.a, v.end(), 1e-9 * set.diameter());
  if (!m) return false;
  if (distance(*m, u.a) <= ctol || distance(*m, v.a) <= ctol) return false;
  if (set.contains(*m) || !in_s(*m)) return false;
  s = *m;
  return true;
}

std::optional<SegmentViolation> foot_violation(ClosedSetDesc const& set,
                                               Membership const& in_s,
                                               NormalSegment const& seg,
                                               int count) {
  double ctol = set.cluster_tol();
  for (int k = 1; k <= count; ++k) {
    Vec s = seg.a + (seg.length * k / (count + 1)) * seg.zeta;
    if (set.contains(s) || !in_s(s)) continue;
    for (auto const& b : set.foot_points(s)) {
      double len = distance(s, b);
      if (distance(b, seg.a) <= ctol || len <= ctol) continue;
      Vec zeta = (s - b) / len;
      if (!is_realized_by_sphere(set, b, zeta, kRhoMin)) continue;
      if (exit_length(set, in_s, b, zeta) < len - ctol) continue;
      return SegmentViolation{seg, NormalSegment{b, zeta, len, true}, s};
    }
  }
  return std::nullopt;
}

}  // namespace

SConvexityReport is_s_convex(ClosedSetDesc const& set, Membership const& in_s,
                             SConvexOptions const& opts) {
  SConvexityReport rep;
  auto samples = set.sample_boundary(opts.samples, opts.seed);
  auto per = map_indices<std::vector<NormalSegment>>(
      opts.exec, samples.size(),
      [&](std::size_t i) { return segments_at(set, in_s, samples[i].point, opts); });
  for (auto& v : per) {
    for (auto& s : v) rep.segments.push_back(std::move(s));
  }
  auto const& segs = rep.segments;
  std::size_t n = segs.size();

  // First meeting partner for each i, chosen deterministically.
  struct Hit {
    std::size_t j = 0;
    Vec s;
    bool found = false;
  };
  auto hits = map_indices<Hit>(opts.exec, n, [&](std::size_t i) {
    Hit h;
    for (std::size_t j = i + 1; j < n; ++j) {
      Vec s;
      if (meets_in_s(set, in_s, segs[i], segs[j], s)) {
        h = {j, s, true};
        break;
      }
    }
    return h;
  });
  rep.pairs_tested = n * (n > 0 ? n - 1 : 0) / 2;
  for (std::size_t i = 0; i < n; ++i) {
    if (hits[i].found) {
      rep.verdict = Verdict::fails;
      rep.violation = SegmentViolation{segs[i], segs[hits[i].j], hits[i].s};
      return rep;
    }
  }

  auto feet = map_indices<std::optional<SegmentViolation>>(
      opts.exec, n, [&](std::size_t i) {
        return foot_violation(set, in_s, segs[i], opts.foot_points_per_segment);
      });
  rep.foot_tests = n * static_cast<std::size_t>(opts.foot_points_per_segment);
  for (auto& f : feet) {
    if (f) {
      rep.verdict = Verdict::fails;
      rep.violation = std::move(f);
      return rep;
    }
  }
  return rep;
}

//---------------------------------------------------------------------------//
namespace {

// Parameter range [t0, t1] of the line p + t d inside the box.
bool clip_to_box(Box const& box, Vec const& p, Vec const& d, double& t0,
                 double& t1) {
  t0 = -kInf;
  t1 = kInf;
  for (int i = 0; i < box.dim(); ++i) {
    if (std::abs(d[i]) < 1e-15) {
      if (p[i] < box.lo[i] || p[i] > box.hi[i]) return false;
      continue;
    }
    double a = (box.lo[i] - p[i]) / d[i];
    double b = (box.hi[i] - p[i]) / d[i];
    if (a > b) std::swap(a, b);
    t0 = std::max(t0, a);
    t1 = std::min(t1, b);
  }
  return t0 < t1;
}

std::vector<UpRecord> scan_ray(HullContext const& ctx, Vec const& p,
                               Vec const& d, UpOptions const& opts) {
  std::vector<UpRecord> out;
  ClosedSetDesc const& set = ctx.set();
  double t0, t1;
  if (!clip_to_box(set.box(), p, d, t0, t1)) return out;
  auto at = [&](double t) { return p + t * d; };
  int n = std::max(2, opts.march_steps);
  double prev_t = t0;
  bool prev_in = ctx.in_hull_r(at(t0));
  for (int k = 1; k <= n; ++k) {
    double t = t0 + (t1 - t0) * k / n;
    bool in = ctx.in_hull_r(at(t));
    if (in != prev_in) {
      double lo = prev_t, hi = t;  // lo has prev_in, hi has in
      for (int i = 0; i < opts.bisection_depth; ++i) {
        double mid = 0.5 * (lo + hi);
        (ctx.in_hull_r(at(mid)) == prev_in ? lo : hi) = mid;
      }
      Vec x = prev_in ? at(lo) : at(hi);
      UpRecord rec;
      rec.x = x;
      if (set.contains(x)) {
        rec.projections = {x};
        rec.clusters = 1;
      } else {
        auto pr = set.project(x);
        rec.projections = pr.points;
        rec.clusters = pr.continuum ? std::max<std::size_t>(2, pr.cluster_count())
                                    : pr.cluster_count();
      }
      out.push_back(std::move(rec));
    }
    prev_in = in;
    prev_t = t;
  }
  return out;
}

}  // namespace

UpReport check_UP_r(HullContext const& ctx, UpOptions const& opts) {
  ClosedSetDesc const& set = ctx.set();
  int dim = set.dim();
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::pair<Vec, Vec>> rays;
  for (int i = 0; i < opts.rays; ++i) {
    Vec p = set.box().lo;
    for (int k = 0; k < dim; ++k) {
      p[k] = set.box().lo[k] + u(rng) * (set.box().hi[k] - set.box().lo[k]);
    }
    int axis = i % (dim + 1);
    Vec d = axis < dim ? Vec::unit(dim, axis) : detail::random_unit(dim, rng);
    rays.emplace_back(p, d);
  }
  auto found = map_indices<std::vector<UpRecord>>(opts.exec, rays.size(), [&](std::size_t i) {
    return scan_ray(ctx, rays[i].first, rays[i].second, opts);
  });
  UpReport rep;
  for (auto& v : found) {
    for (auto& r : v) rep.located.push_back(std::move(r));
  }
  for (std::size_t i = 0; i < rep.located.size(); ++i) {
    if (rep.located[i].clusters >= 2) {
      rep.verdict = Verdict::fails;
      rep.certificate = i;
      break;
    }
  }
  return rep;
}

//---------------------------------------------------------------------------//
OpenReport is_open_O(HullContext const& ctx, OpenOptions const& opts) {
  ClosedSetDesc const& set = ctx.set();
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Vec> pts;
  for (long i = 0; i < 200L * opts.samples && static_cast<int>(pts.size()) < opts.samples;
       ++i) {
    Vec p = set.box().lo;
    for (int k = 0; k < set.dim(); ++k) {
      p[k] = set.box().lo[k] + u(rng) * (set.box().hi[k] - set.box().lo[k]);
    }
    if (ctx.in_O(p)) pts.push_back(p);
  }
  OpenReport rep;
  if (pts.empty()) {
    rep.verdict = Verdict::vacuous;
    return rep;
  }
  double eta_min = 1e-6 * set.diameter();
  rep.records = map_indices<OpenRecord>(opts.exec, pts.size(), [&](std::size_t i) {
    std::mt19937_64 local(opts.seed + 7919 * (i + 1));
    OpenRecord rec{pts[i], 0};
    for (double eta = 1e-2 * set.diameter(); eta >= eta_min; eta /= 2) {
      bool all = true;
      for (int k = 0; k < opts.perturbations && all; ++k) {
        all = ctx.in_O(pts[i] + eta * detail::random_unit(set.dim(), local));
      }
      if (all) {
        rec.eta = eta;
        break;
      }
    }
    return rec;
  });
  for (std::size_t i = 0; i < rep.records.size(); ++i) {
    if (rep.records[i].eta == 0) {
      rep.verdict = Verdict::fails;
      rep.certificate = i;
      break;
    }
  }
  return rep;
}

//---------------------------------------------------------------------------//
HarnessReport equivalence_harness(ClosedSetDesc const& set, RadiusField const& r,
                                  HarnessOptions const& opts) {
  HarnessReport rep;
  rep.condition = check_extended_condition(set, r, opts.check);
  rep.i = rep.condition.verdict;

  HullContext ctx(set, r, {opts.check.density, opts.check.rho_max});
  Membership sup = [&](Vec const& x) { return ctx.in_hull_sup(x); };
  Membership hull = [&](Vec const& x) { return ctx.in_hull_r(x); };

  rep.sup_convex = is_s_convex(set, sup, opts.sconvex);
  rep.ii = rep.sup_convex.verdict;

  rep.r_convex = is_s_convex(set, hull, opts.sconvex);
  rep.up = check_UP_r(ctx, opts.up);
  rep.open = is_open_O(ctx, opts.open);
  rep.iii = combine(combine(rep.r_convex.verdict, rep.up.verdict), rep.open.verdict);
  if (rep.iii == Verdict::vacuous) rep.iii = Verdict::holds;

  std::optional<Verdict> seen;
  rep.consistent = true;
  for (Verdict v : {rep.i, rep.ii, rep.iii}) {
    if (v == Verdict::marginal) continue;
    if (v == Verdict::vacuous) v = Verdict::holds;
    if (seen && *seen != v) rep.consistent = false;
    seen = v;
  }
  return rep;
}

}  // namespace exsphere
