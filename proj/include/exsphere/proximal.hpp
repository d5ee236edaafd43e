// Copyright 2026 The exsphere Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Proximal normals: the proximal normal inequality, realization of a normal
// by an r-sphere, the realization radius and its cap, directional distance,
// and sampling of the unit proximal normal cone.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "exsphere/exec.hpp"
#include "exsphere/grid_oracle.hpp"
#include "exsphere/radius_field.hpp"
#include "exsphere/sets.hpp"

namespace exsphere {

/// Smallest sphere radius at which normals are tested.
inline constexpr double kRhoMin = 1e-6;

/// zeta is not realized even at kRhoMin: it is not a proximal normal at the
/// tested scale.
class NoWitnessError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double default_rho_max(ClosedSetDesc const& set);
int default_density(int dim);

enum class Realized { yes, marginal, no };

/*!
 * Whether B(a + rho zeta; rho) misses A, read off d_A(a + rho zeta).
 *
 * The center is at distance exactly rho from a, so the test accepts
 * d >= rho - slack with a slack that shrinks with rho. Values short of that
 * but within ball_tol are `marginal`.
 */
Realized realization_status(ClosedSetDesc const& set, Vec const& a,
                            Vec const& zeta, double rho);
bool is_realized_by_sphere(ClosedSetDesc const& set, Vec const& a,
                           Vec const& zeta, double rho);
double realization_slack(ClosedSetDesc const& set, double rho);

enum class RadiusProvenance { bisection, analytic_convex, capped_at_rho_max };

struct RealizationInfo {
  ExtReal radius;
  RadiusProvenance provenance = RadiusProvenance::bisection;
};

/// max{rho : zeta realized by a rho-sphere at a}, by geometric bisection on
/// [kRhoMin, rho_max]. rho_max <= 0 selects the default.
RealizationInfo realization_info(ClosedSetDesc const& set, Vec const& a,
                                 Vec const& zeta, double rho_max = 0);
ExtReal realization_radius(ClosedSetDesc const& set, Vec const& a,
                           Vec const& zeta, double rho_max = 0);
ExtReal capped_realization_radius(ClosedSetDesc const& set, Vec const& a,
                                  Vec const& zeta, RadiusField const& r,
                                  double rho_max = 0);

struct ProximalCheck {
  bool holds = true;
  std::optional<Vec> certificate;  // a probe x violating the inequality
  std::size_t probes_tested = 0;
};

/// <zeta, x - a> <= sigma |x - a|^2 over oracle points near a, a strided
/// subset of the remaining oracle points, and `probes` boundary samples.
ProximalCheck is_proximal_normal(ClosedSetDesc const& set,
                                 GridOracle const& oracle, Vec const& a,
                                 Vec const& zeta, double sigma, int probes,
                                 std::uint64_t seed = 1);

/// First t in [0, t_max] with x + t zeta in A, +inf if none.
ExtReal directional_distance(ClosedSetDesc const& set, Vec const& x,
                             Vec const& zeta, double t_max);

struct ProxNormal {
  Vec base;
  Vec zeta;
  ExtReal realization;
  RadiusProvenance provenance = RadiusProvenance::bisection;
};

/// Unit directions: angular grid in 2D, Fibonacci sphere in 3D.
std::vector<Vec> direction_sweep(int dim, int density);

/*!
 * Unit proximal normals at a: the analytic normals of the primitives plus a
 * direction sweep, each kept when realized at kRhoMin (sigma = 1/(2
 * kRhoMin)). The sweep is skipped when a primitive lists the whole cone.
 * Every entry carries its realization radius.
 */
std::vector<ProxNormal> sample_unit_normals(ClosedSetDesc const& set,
                                            Vec const& a, int density = 0,
                                            double rho_max = 0,
                                            Exec exec = Exec::serial);

}  // namespace exsphere
