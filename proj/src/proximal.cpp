// Copyright 2026 The exsphere Authors.
// SPDX-License-Identifier: Apache-2.0

#include "exsphere/proximal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace exsphere {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kBisectRelWidth = 1e-12;

void require_boundary(ClosedSetDesc const& set, Vec const& a, char const* op) {
  if (!set.boundary_contains(a)) {
    throw DomainError(std::string(op) + ": point " + to_string(a) +
                      " is not on the boundary of A");
  }
}

}  // namespace

double default_rho_max(ClosedSetDesc const& set) { return 1e3 * set.diameter(); }

int default_density(int dim) { return dim == 2 ? 720 : 2000; }

double realization_slack(ClosedSetDesc const& set, double rho) {
  return std::min(set.ball_tol(), 1e-9 * rho + 1e-14 * set.diameter());
}

Realized realization_status(ClosedSetDesc const& set, Vec const& a,
                            Vec const& zeta, double rho) {
  if (!(rho > 0) || !std::isfinite(rho)) {
    throw DomainError("sphere radius must be positive and finite");
  }
  Vec z = require_unit(zeta, "zeta");
  double d = set.distance(a + rho * z);
  if (d >= rho - realization_slack(set, rho)) return Realized::yes;
  if (d >= rho - set.ball_tol()) return Realized::marginal;
  return Realized::no;
}

bool is_realized_by_sphere(ClosedSetDesc const& set, Vec const& a,
                           Vec const& zeta, double rho) {
  return realization_status(set, a, zeta, rho) == Realized::yes;
}

RealizationInfo realization_info(ClosedSetDesc const& set, Vec const& a,
                                 Vec const& zeta, double rho_max) {
  if (rho_max <= 0) rho_max = default_rho_max(set);
  Vec z = require_unit(zeta, "zeta");
  if (!is_realized_by_sphere(set, a, z, kRhoMin)) {
    throw NoWitnessError("direction " + to_string(z) + " at " + to_string(a) +
                         " is not realized by a sphere of radius " +
                         std::to_string(kRhoMin));
  }
  if (set.is_convex()) {
    return {ExtReal::infinity(), RadiusProvenance::analytic_convex};
  }
  if (is_realized_by_sphere(set, a, z, rho_max)) {
    return {ExtReal::infinity(), RadiusProvenance::capped_at_rho_max};
  }
  double lo = kRhoMin;
  double hi = rho_max;
  while (hi > lo * (1 + kBisectRelWidth)) {
    double mid = std::sqrt(lo * hi);
    if (mid <= lo || mid >= hi) break;
    (is_realized_by_sphere(set, a, z, mid) ? lo : hi) = mid;
  }
  return {ExtReal::finite(lo), RadiusProvenance::bisection};
}

ExtReal realization_radius(ClosedSetDesc const& set, Vec const& a,
                           Vec const& zeta, double rho_max) {
  return realization_info(set, a, zeta, rho_max).radius;
}

ExtReal capped_realization_radius(ClosedSetDesc const& set, Vec const& a,
                                  Vec const& zeta, RadiusField const& r,
                                  double rho_max) {
  return ext_min(realization_radius(set, a, zeta, rho_max), r.value(set, a));
}

//---------------------------------------------------------------------------//
ProximalCheck is_proximal_normal(ClosedSetDesc const& set,
                                 GridOracle const& oracle, Vec const& a,
                                 Vec const& zeta, double sigma, int probes,
                                 std::uint64_t seed) {
  require_boundary(set, a, "is_proximal_normal");
  if (sigma < 0) throw DomainError("sigma must be nonnegative");
  Vec z = require_unit(zeta, "zeta");

  std::vector<Vec> pts = oracle.points_near(a, 0.1 * set.diameter());
  auto const& all = oracle.points();
  std::size_t stride = std::max<std::size_t>(1, all.size() / 4000);
  for (std::size_t i = 0; i < all.size(); i += stride) pts.push_back(all[i]);
  if (probes > 0) {
    for (auto const& s : set.sample_boundary(probes, seed)) pts.push_back(s.point);
  }

  ProximalCheck out;
  double tol = 1e-9 * set.diameter();
  for (auto const& x : pts) {
    Vec w = x - a;
    double lhs = z.dot(w);
    double rhs = sigma * w.norm2();
    ++out.probes_tested;
    if (lhs > rhs + tol * w.norm()) {
      out.holds = false;
      out.certificate = x;
      return out;
    }
  }
  return out;
}

ExtReal directional_distance(ClosedSetDesc const& set, Vec const& x,
                             Vec const& zeta, double t_max) {
  if (!(t_max > 0)) throw DomainError("t_max must be positive");
  Vec z = require_unit(zeta, "zeta");
  // Sphere tracing: the step d_A(x + t z) can never jump over A.
  double hit = 1e-10 * set.diameter();
  double t = 0;
  for (long it = 0; it < 1000000; ++it) {
    double d = set.distance(x + t * z);
    if (d <= hit) return ExtReal::finite(t);
    t += d;
    if (t > t_max) return ExtReal::infinity();
  }
  return ExtReal::finite(t);
}

//---------------------------------------------------------------------------//
std::vector<Vec> direction_sweep(int dim, int density) {
  if (density < 1) throw DomainError("density must be at least 1");
  std::vector<Vec> out;
  out.reserve(static_cast<std::size_t>(density));
  if (dim == 2) {
    for (int i = 0; i < density; ++i) {
      double t = 2 * std::numbers::pi * i / density;
      out.emplace_back(std::cos(t), std::sin(t));
    }
    return out;
  }
  double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < density; ++i) {
    double zc = 1.0 - 2.0 * (i + 0.5) / density;
    double rad = std::sqrt(std::max(0.0, 1.0 - zc * zc));
    double phi = golden * i;
    out.emplace_back(rad * std::cos(phi), rad * std::sin(phi), zc);
  }
  return out;
}

std::vector<ProxNormal> sample_unit_normals(ClosedSetDesc const& set,
                                            Vec const& a, int density,
                                            double rho_max, Exec exec) {
  require_boundary(set, a, "sample_unit_normals");
  if (density <= 0) density = default_density(set.dim());

  auto complete = set.complete_normals(a);
  std::vector<Vec> cands = complete ? *complete : set.candidate_normals(a);
  std::vector<Vec> sweep;
  if (!complete) sweep = direction_sweep(set.dim(), density);
  for (auto const& d : sweep) {
    bool dup = false;
    for (auto const& c : cands) {
      if (distance(c, d) <= 1e-9) dup = true;
    }
    if (!dup) cands.push_back(d);
  }

  auto keep = map_indices<std::uint8_t>(exec, cands.size(), [&](std::size_t i) {
    return static_cast<std::uint8_t>(is_realized_by_sphere(set, a, cands[i], kRhoMin));
  });
  std::vector<Vec> kept;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    if (keep[i]) kept.push_back(cands[i]);
  }
  return map_indices<ProxNormal>(exec, kept.size(), [&](std::size_t i) {
    auto info = realization_info(set, a, kept[i], rho_max);
    return ProxNormal{a, kept[i], info.radius, info.provenance};
  });
}

}  // namespace exsphere
