// Copyright 2026 The exsphere Authors.
// SPDX-License-Identifier: Apache-2.0

#include "exsphere/ballcover.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "exsphere/proximal.hpp"

namespace exsphere {

char const* case_tag(WitnessCase c) {
  switch (c) {
    case WitnessCase::direct:
      return "direct";
    case WitnessCase::off_interior:
      return "off-interior";
    case WitnessCase::inner:
      return "inner";
    case WitnessCase::lens_middle:
      return "lens-middle";
    case WitnessCase::lens_far:
      return "lens-far";
    case WitnessCase::ray:
      return "ray";
    case WitnessCase::ray_finite:
      return "ray-finite";
  }
  return "?";
}

double rho_epsilon(double rho_x, double dist_yx, double r_ae) {
  if (!(rho_x > 0) || !(dist_yx > 0) || !(r_ae > 0)) {
    throw DomainError("rho_epsilon: arguments must be positive");
  }
  if (dist_yx < r_ae) {
    throw DomainError("rho_epsilon: requires |y - x| >= r(a_eps)");
  }
  double den = dist_yx * dist_yx + rho_x * rho_x - r_ae * r_ae;
  if (!(den > 0)) throw DomainError("rho_epsilon: denominator is not positive");
  return rho_x * rho_x * dist_yx / den;
}

Vec find_interior_point_near(ClosedSetDesc const& set, Vec const& a_x,
                             double eps, std::uint64_t seed) {
  if (!set.in_bdry_of_interior(a_x)) {
    throw DomainError("find_interior_point_near: " + to_string(a_x) +
                      " is not on the boundary of int A");
  }
  auto z = set.interior_point_near(a_x, eps, seed, 100000);
  if (!z) {
    WitnessTrace t;
    t.a_x = a_x;
    t.eps = eps;
    throw ConstructionError("no interior point found within eps of a_x", t);
  }
  return *z;
}

Vec boundary_crossing(ClosedSetDesc const& set, Vec const& x, Vec const& z,
                      Vec const& a_x, double eps) {
  if (set.contains(x)) throw DomainError("boundary_crossing: x lies in A");
  if (!set.interior_contains(z)) {
    throw DomainError("boundary_crossing: z is not an interior point");
  }
  double len = distance(x, z);
  Vec u = (z - x) / len;
  double hit = 1e-10 * set.diameter();

  // March from x by the distance to A, then tighten [lo, hi] so that
  // x + hi u is in A and x + lo u is not.
  double t = 0;
  for (int it = 0; it < 1000000 && t < len; ++it) {
    double d = set.distance(x + t * u);
    if (d <= hit) break;
    t += d;
  }
  double lo = 0, hi = std::min(t, len);
  if (!set.contains(x + hi * u)) {
    double step = hit;
    while (hi < len && !set.contains(x + hi * u)) {
      lo = hi;
      hi = std::min(len, hi + step);
      step *= 2;
    }
  } else {
    lo = std::max(0.0, hi - hit);
    while (lo > 0 && set.contains(x + lo * u)) lo = std::max(0.0, lo - 2 * (hi - lo));
  }
  for (int i = 0; i < 200 && hi - lo > 0; ++i) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (set.contains(x + mid * u) ? hi : lo) = mid;
  }
  Vec a_eps = x + hi * u;

  auto roots = sphere_line_roots(x, u, a_x, eps);
  if (!roots || !(roots->first < hi && hi < roots->second)) {
    WitnessTrace tr;
    tr.a_x = a_x;
    tr.eps = eps;
    tr.z_eps = z;
    tr.a_eps = a_eps;
    throw ConstructionError("boundary crossing falls outside B(a_x; eps)", tr);
  }
  return a_eps;
}

//---------------------------------------------------------------------------//
namespace {

struct Built {
  Vec center;
  WitnessCase tag;
};

bool ball_ok(ClosedSetDesc const& set, Vec const& x, Vec const& c, double rad) {
  double tol = set.ball_tol();
  return distance(x, c) <= rad + tol && set.distance(c) >= rad - tol;
}

// Pick the sampled normal with the largest realization; ties go to the
// direction closest to (x - a).
ProxNormal const& pick_normal(std::vector<ProxNormal> const& ns, Vec const& x,
                              Vec const& a) {
  Vec toward = x - a;
  double tn = toward.norm();
  auto score = [&](ProxNormal const& p) {
    return tn > 0 ? p.zeta.dot(toward) / tn : 0.0;
  };
  std::size_t best = 0;
  for (std::size_t i = 1; i < ns.size(); ++i) {
    ExtReal ri = ns[i].realization, rb = ns[best].realization;
    bool tie = (ri.is_infinite() && rb.is_infinite()) ||
               (ri.is_finite() && rb.is_finite() &&
                std::abs(ri.value() - rb.value()) <= 1e-12 * rb.value());
    if (tie ? score(ns[i]) > score(ns[best]) : rb < ri) best = i;
  }
  return ns[best];
}

/*!
 * Shrinking-eps search near a_x in bdry(int A). rho is the requested ball
 * radius (rho >= d_A(x)) and r_ax the radius value at a_x (2 rho).
 */
Built lens_search(ClosedSetDesc const& set, RadiusField const& r, Vec const& x,
                  double rho, double r_ax, WitnessOptions const& opts,
                  WitnessTrace& tr) {
  double eps = opts.eps0 > 0 ? std::min(opts.eps0, tr.rho_x / 2) : tr.rho_x / 2;
  for (int h = 0; h <= opts.max_halvings; ++h, eps /= 2) {
    tr.eps = eps;
    tr.halvings = h;
    auto z = set.interior_point_near(tr.a_x, eps, opts.seed + static_cast<std::uint64_t>(h),
                                     100000);
    if (!z) {
      tr.notes.push_back("eps " + std::to_string(eps) + ": no interior point");
      continue;
    }
    tr.z_eps = z;
    Vec a_eps;
    try {
      a_eps = boundary_crossing(set, x, *z, tr.a_x, eps);
    } catch (ConstructionError const& e) {
      tr.notes.push_back("eps " + std::to_string(eps) + ": " + e.what());
      continue;
    }
    tr.a_eps = a_eps;
    auto normals = sample_unit_normals(set, a_eps, opts.density, opts.rho_max);
    if (normals.empty()) {
      tr.notes.push_back("eps " + std::to_string(eps) + ": empty normal cone");
      continue;
    }
    ProxNormal const& pn = pick_normal(normals, x, a_eps);
    ExtReal star = ext_min(pn.realization, r.value(set, a_eps));
    double rho_star = star.is_infinite() ? r_ax : star.value();
    Vec y = a_eps + rho_star * pn.zeta;
    double d = distance(y, x);
    tr.y_eps = y;
    tr.rho_star = rho_star;

    std::optional<Built> cand;
    if (d <= r_ax - rho_star) {
      cand = Built{y, WitnessCase::inner};
    } else if (d < rho_star) {
      Vec c = d > 0 ? x + (rho / d) * (y - x) : x;
      cand = Built{c, WitnessCase::lens_middle};
    } else {
      double re = rho_epsilon(tr.rho_x, d, rho_star);
      tr.rho_eps = re;
      if (re > rho) {
        cand = Built{x + (rho / d) * (y - x), WitnessCase::lens_far};
      } else {
        double rx2 = tr.rho_x * tr.rho_x, rs2 = rho_star * rho_star;
        double disc = rx2 * rx2 + rs2 * rs2 - rs2 * rx2;
        std::ostringstream os;
        os << "eps " << eps << ": lens radius " << re << " <= " << rho
           << " (discriminant " << disc << ")";
        tr.notes.push_back(os.str());
        continue;
      }
    }
    if (ball_ok(set, x, cand->center, rho)) return *cand;
    tr.notes.push_back("eps " + std::to_string(eps) + ": " + case_tag(cand->tag) +
                       " candidate failed validation");
  }
  throw ConstructionError("eps search exhausted without a valid witness", tr);
}

}  // namespace

WitnessBall construct_witness(ClosedSetDesc const& set, RadiusField const& r,
                              Vec const& x, std::vector<double> const& deltas,
                              WitnessOptions const& opts) {
  for (double d : deltas) {
    if (!(d > 0) || !std::isfinite(d)) throw DomainError("deltas must be positive");
  }
  RhoValue rv = radius_function(set, r, x);
  WitnessBall w;
  w.x = x;
  w.rho = rv.rho;
  w.trace.a_x = rv.a_x;
  w.trace.rho_x = rv.dist;
  double rho_x = rv.dist;
  Vec zeta_x = (x - rv.a_x) / rho_x;

  if (rv.rho.is_finite()) {
    double rho = rv.rho.value();
    if (rho < rho_x) {
      w.tag = WitnessCase::direct;
      w.ball = Ball(x, rho);
      return w;
    }
    if (!set.in_bdry_of_interior(rv.a_x)) {
      w.tag = WitnessCase::off_interior;
      Vec c = x + rho * zeta_x;
      if (!ball_ok(set, x, c, rho)) {
        w.trace.notes.push_back("normal at a_x is not realized by r(a_x)");
        throw ConstructionError("off-interior witness meets A", w.trace);
      }
      w.ball = Ball(c, rho);
      return w;
    }
    Built b = lens_search(set, r, x, rho, 2 * rho, opts, w.trace);
    w.tag = b.tag;
    w.ball = Ball(b.center, rho);
    return w;
  }

  // rho(x) = inf: emit a direction and check each requested delta.
  double dmax = rho_x;
  for (double d : deltas) dmax = std::max(dmax, d);
  w.deltas = deltas;
  Vec u = zeta_x;
  if (!set.in_bdry_of_interior(rv.a_x)) {
    w.tag = WitnessCase::ray;
  } else {
    // A ball of radius 2 dmax through x (or containing it) holds every
    // delta-ball tangent at x up to radius dmax.
    double target = 2 * dmax;
    Built b = lens_search(set, r, x, target, 2 * target, opts, w.trace);
    w.tag = WitnessCase::ray_finite;
    double len = distance(b.center, x);
    if (len > 0) u = (b.center - x) / len;
  }
  double tol = set.ball_tol();
  for (double d : deltas) {
    if (set.distance(x + d * u) < d - tol) {
      w.trace.notes.push_back("delta " + std::to_string(d) + " ball meets A");
      throw ConstructionError("delta ball meets A", w.trace);
    }
  }
  w.direction = u;
  return w;
}

std::vector<CoverAttempt> build_cover(ClosedSetDesc const& set,
                                      RadiusField const& r,
                                      std::vector<Vec> const& points,
                                      std::vector<double> const& deltas,
                                      WitnessOptions const& opts, Exec exec) {
  return map_indices<CoverAttempt>(exec, points.size(), [&](std::size_t i) {
    CoverAttempt at;
    at.x = points[i];
    try {
      at.witness = construct_witness(set, r, points[i], deltas, opts);
    } catch (ConstructionError const& e) {
      at.error = e.what();
      for (auto const& n : e.trace().notes) at.error += "; " + n;
    } catch (std::exception const& e) {
      at.error = e.what();
    }
    return at;
  });
}

}  // namespace exsphere
