// Copyright 2026 The exsphere Authors.
// SPDX-License-Identifier: Apache-2.0

#include "primitive.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace exsphere::detail {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Vec affine_project(AffineSubspace const& s, Vec const& x) {
  Vec out = s.point;
  Vec w = x - s.point;
  for (auto const& b : s.basis) out += w.dot(b) * b;
  return out;
}

// Points of the affine set p0 + span(tangents) on a regular lattice that
// fall inside the box.
std::vector<Vec> flat_lattice(Vec const& p0, std::vector<Vec> const& tangents,
                              Box const& box, double spacing) {
  std::vector<Vec> out;
  if (tangents.empty()) {
    if (box.contains(p0)) out.push_back(p0);
    return out;
  }
  int k = static_cast<int>(std::ceil(0.5 * box.diameter() / spacing)) + 1;
  if (tangents.size() == 1) {
    for (int i = -k; i <= k; ++i) {
      Vec p = p0 + (i * spacing) * tangents[0];
      if (box.contains(p)) out.push_back(p);
    }
  } else {
    for (int i = -k; i <= k; ++i) {
      for (int j = -k; j <= k; ++j) {
        Vec p = p0 + (i * spacing) * tangents[0] + (j * spacing) * tangents[1];
        if (box.contains(p)) out.push_back(p);
      }
    }
  }
  return out;
}

std::vector<Vec> sphere_lattice(Vec const& c, double r, Box const& box,
                                double spacing) {
  std::vector<Vec> out;
  if (c.dim() == 2) {
    int n = std::max(16, static_cast<int>(std::ceil(2 * std::numbers::pi * r /
                                                    spacing)));
    for (int i = 0; i < n; ++i) {
      double t = 2 * std::numbers::pi * i / n;
      Vec p = c + r * Vec(std::cos(t), std::sin(t));
      if (box.contains(p)) out.push_back(p);
    }
  } else {
    double area = 4 * std::numbers::pi * r * r;
    int n = static_cast<int>(std::clamp(std::ceil(area / (spacing * spacing)),
                                        32.0, 400000.0));
    double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < n; ++i) {
      double z = 1.0 - 2.0 * (i + 0.5) / n;
      double rad = std::sqrt(std::max(0.0, 1.0 - z * z));
      double phi = golden * i;
      Vec p = c + r * Vec(rad * std::cos(phi), rad * std::sin(phi), z);
      if (box.contains(p)) out.push_back(p);
    }
  }
  return out;
}

Vec random_in_box(Box const& box, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Vec p = box.lo;
  for (int i = 0; i < box.dim(); ++i) {
    p[i] = box.lo[i] + u(rng) * (box.hi[i] - box.lo[i]);
  }
  return p;
}

Vec hyperplane_project(Vec const& n, double c, Vec const& x) {
  return x - (n.dot(x) - c) * n;
}

Vec orthonormalize_against(Vec v, std::vector<Vec> const& basis) {
  for (auto const& b : basis) v -= v.dot(b) * b;
  return v;
}

}  // namespace

//---------------------------------------------------------------------------//
std::vector<Vec> orthonormal_complement(Vec const& n) {
  if (n.dim() == 2) return {Vec(-n[1], n[0])};
  // Seed with the axis least aligned with n.
  int axis = 0;
  for (int i = 1; i < 3; ++i) {
    if (std::abs(n[i]) < std::abs(n[axis])) axis = i;
  }
  Vec t1 = orthonormalize_against(Vec::unit(3, axis), {n}).normalized();
  Vec t2(n[1] * t1[2] - n[2] * t1[1], n[2] * t1[0] - n[0] * t1[2],
         n[0] * t1[1] - n[1] * t1[0]);
  return {t1, t2.normalized()};
}

Vec random_unit(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  for (;;) {
    Vec v(dim);
    for (int i = 0; i < dim; ++i) v[i] = g(rng);
    double n = v.norm();
    if (n > 1e-12) return v / n;
  }
}

Primitive normalize_primitive(Primitive p, int dim) {
  auto check = [dim](Vec const& v) {
    if (v.dim() != dim) throw DomainError("primitive dimension mismatch");
  };
  return std::visit(
      overloaded{
          [&](HalfSpace h) -> Primitive {
            check(h.normal);
            double n = h.normal.norm();
            if (!(n > 0)) throw DomainError("half-space normal is zero");
            h.normal /= n;
            h.offset /= n;
            return h;
          },
          [&](ClosedBall b) -> Primitive {
            check(b.center);
            if (!(b.radius > 0) || !std::isfinite(b.radius)) {
              throw DomainError("ball radius must be positive and finite");
            }
            return b;
          },
          [&](BallComplement b) -> Primitive {
            check(b.center);
            if (!(b.radius > 0) || !std::isfinite(b.radius)) {
              throw DomainError("ball radius must be positive and finite");
            }
            return b;
          },
          [&](Slab s) -> Primitive {
            check(s.normal);
            double n = s.normal.norm();
            if (!(n > 0)) throw DomainError("slab normal is zero");
            if (!(s.lo <= s.hi)) throw DomainError("slab requires lo <= hi");
            s.normal /= n;
            s.lo /= n;
            s.hi /= n;
            return s;
          },
          [&](AffineSubspace a) -> Primitive {
            check(a.point);
            if (static_cast<int>(a.basis.size()) > dim) {
              throw DomainError("affine basis has too many vectors");
            }
            std::vector<Vec> ortho;
            for (auto const& b : a.basis) {
              check(b);
              Vec v = orthonormalize_against(b, ortho);
              if (v.norm() < 1e-9 * std::max(1.0, b.norm())) {
                throw DomainError("affine basis is linearly dependent");
              }
              ortho.push_back(v.normalized());
            }
            a.basis = std::move(ortho);
            return a;
          },
          [&](FinitePointSet f) -> Primitive {
            if (f.points.empty()) throw DomainError("point set is empty");
            for (auto const& q : f.points) check(q);
            return f;
          },
      },
      std::move(p));
}

//---------------------------------------------------------------------------//
bool leaf_contains(Primitive const& p, Vec const& x, double slack) {
  return std::visit(
      overloaded{
          [&](HalfSpace const& h) {
            return h.normal.dot(x) - h.offset <= slack;
          },
          [&](ClosedBall const& b) {
            return distance(x, b.center) <= b.radius + slack;
          },
          [&](BallComplement const& b) {
            return distance(x, b.center) >= b.radius - slack;
          },
          [&](Slab const& s) {
            double t = s.normal.dot(x);
            return t >= s.lo - slack && t <= s.hi + slack;
          },
          [&](AffineSubspace const& a) {
            return distance(x, affine_project(a, x)) <= slack;
          },
          [&](FinitePointSet const& f) {
            for (auto const& q : f.points) {
              if (distance(x, q) <= slack) return true;
            }
            return false;
          },
      },
      p);
}

bool leaf_interior_contains(Primitive const& p, Vec const& x, double slack) {
  return std::visit(
      overloaded{
          [&](HalfSpace const& h) {
            return h.normal.dot(x) - h.offset < -slack;
          },
          [&](ClosedBall const& b) {
            return distance(x, b.center) < b.radius - slack;
          },
          [&](BallComplement const& b) {
            return distance(x, b.center) > b.radius + slack;
          },
          [&](Slab const& s) {
            double t = s.normal.dot(x);
            return s.lo < s.hi && t > s.lo + slack && t < s.hi - slack;
          },
          [&](AffineSubspace const& a) {
            return static_cast<int>(a.basis.size()) == x.dim();
          },
          [&](FinitePointSet const&) { return false; },
      },
      p);
}

bool leaf_has_interior(Primitive const& p, int dim) {
  return std::visit(
      overloaded{
          [](HalfSpace const&) { return true; },
          [](ClosedBall const&) { return true; },
          [](BallComplement const&) { return true; },
          [](Slab const& s) { return s.lo < s.hi; },
          [dim](AffineSubspace const& a) {
            return static_cast<int>(a.basis.size()) == dim;
          },
          [](FinitePointSet const&) { return false; },
      },
      p);
}

bool leaf_is_convex(Primitive const& p) {
  return std::visit(
      overloaded{
          [](BallComplement const&) { return false; },
          [](FinitePointSet const& f) { return f.points.size() == 1; },
          [](auto const&) { return true; },
      },
      p);
}

LeafProjection leaf_project(Primitive const& p, Vec const& x) {
  return std::visit(
      overloaded{
          [&](HalfSpace const& h) -> LeafProjection {
            double e = h.normal.dot(x) - h.offset;
            if (e <= 0) return {{x}};
            return {{x - e * h.normal}};
          },
          [&](ClosedBall const& b) -> LeafProjection {
            Vec w = x - b.center;
            double n = w.norm();
            if (n <= b.radius) return {{x}};
            return {{b.center + (b.radius / n) * w}};
          },
          [&](BallComplement const& b) -> LeafProjection {
            Vec w = x - b.center;
            double n = w.norm();
            if (n >= b.radius) return {{x}};
            if (n > 0) return {{b.center + (b.radius / n) * w}};
            LeafProjection lp;
            lp.continuum = true;
            for (int i = 0; i < x.dim(); ++i) {
              lp.points.push_back(b.center + b.radius * Vec::unit(x.dim(), i));
              lp.points.push_back(b.center - b.radius * Vec::unit(x.dim(), i));
            }
            return lp;
          },
          [&](Slab const& s) -> LeafProjection {
            double t = s.normal.dot(x);
            double c = std::clamp(t, s.lo, s.hi);
            return {{x + (c - t) * s.normal}};
          },
          [&](AffineSubspace const& a) -> LeafProjection {
            return {{affine_project(a, x)}};
          },
          [&](FinitePointSet const& f) -> LeafProjection {
            double best = kInf;
            for (auto const& q : f.points) best = std::min(best, distance(x, q));
            LeafProjection lp;
            for (auto const& q : f.points) {
              if (distance(x, q) <= best) lp.points.push_back(q);
            }
            return lp;
          },
      },
      p);
}

double leaf_distance(Primitive const& p, Vec const& x) {
  return std::visit(
      overloaded{
          [&](HalfSpace const& h) {
            return std::max(0.0, h.normal.dot(x) - h.offset);
          },
          [&](ClosedBall const& b) {
            return std::max(0.0, distance(x, b.center) - b.radius);
          },
          [&](BallComplement const& b) {
            return std::max(0.0, b.radius - distance(x, b.center));
          },
          [&](Slab const& s) {
            double t = s.normal.dot(x);
            return std::max({0.0, s.lo - t, t - s.hi});
          },
          [&](AffineSubspace const& a) {
            return distance(x, affine_project(a, x));
          },
          [&](FinitePointSet const& f) {
            double best = kInf;
            for (auto const& q : f.points) best = std::min(best, distance(x, q));
            return best;
          },
      },
      p);
}

double leaf_boundary_distance(Primitive const& p, Vec const& x) {
  return std::visit(
      overloaded{
          [&](HalfSpace const& h) {
            return std::abs(h.normal.dot(x) - h.offset);
          },
          [&](ClosedBall const& b) {
            return std::abs(distance(x, b.center) - b.radius);
          },
          [&](BallComplement const& b) {
            return std::abs(distance(x, b.center) - b.radius);
          },
          [&](Slab const& s) {
            double t = s.normal.dot(x);
            return std::min(std::abs(t - s.lo), std::abs(t - s.hi));
          },
          [&](AffineSubspace const& a) {
            if (static_cast<int>(a.basis.size()) == x.dim()) return kInf;
            return distance(x, affine_project(a, x));
          },
          [&](FinitePointSet const& f) { return leaf_distance(f, x); },
      },
      p);
}

std::vector<Vec> leaf_outward_normals(Primitive const& p, Vec const& a,
                                      double tol) {
  if (leaf_boundary_distance(p, a) > tol) return {};
  return std::visit(
      overloaded{
          [&](HalfSpace const& h) -> std::vector<Vec> { return {h.normal}; },
          [&](ClosedBall const& b) -> std::vector<Vec> {
            return {(a - b.center).normalized()};
          },
          [&](BallComplement const& b) -> std::vector<Vec> {
            return {(b.center - a).normalized()};
          },
          [&](Slab const& s) -> std::vector<Vec> {
            double t = s.normal.dot(a);
            std::vector<Vec> out;
            if (std::abs(t - s.hi) <= tol) out.push_back(s.normal);
            if (std::abs(t - s.lo) <= tol) out.push_back(-s.normal);
            return out;
          },
          [&](AffineSubspace const& af) -> std::vector<Vec> {
            int codim = a.dim() - static_cast<int>(af.basis.size());
            if (codim == 1) {
              // The single complement direction, both signs.
              Vec v = Vec::unit(a.dim(), 0);
              double best = -1;
              for (int i = 0; i < a.dim(); ++i) {
                Vec c = orthonormalize_against(Vec::unit(a.dim(), i), af.basis);
                if (c.norm() > best) {
                  best = c.norm();
                  v = c;
                }
              }
              v = v.normalized();
              return {v, -v};
            }
            if (codim == 2 && a.dim() == 3) {
              auto comp = orthonormal_complement(af.basis[0]);
              std::vector<Vec> out;
              for (int i = 0; i < 36; ++i) {
                double t = 2 * std::numbers::pi * i / 36;
                out.push_back(std::cos(t) * comp[0] + std::sin(t) * comp[1]);
              }
              return out;
            }
            return {};
          },
          [&](FinitePointSet const&) -> std::vector<Vec> { return {}; },
      },
      p);
}

std::vector<Vec> leaf_inward_directions(Primitive const& p, Vec const& a,
                                        double tol) {
  if (leaf_boundary_distance(p, a) > tol) return {};
  return std::visit(
      overloaded{
          [&](HalfSpace const& h) -> std::vector<Vec> { return {-h.normal}; },
          [&](ClosedBall const& b) -> std::vector<Vec> {
            return {(b.center - a).normalized()};
          },
          [&](BallComplement const& b) -> std::vector<Vec> {
            return {(a - b.center).normalized()};
          },
          [&](Slab const& s) -> std::vector<Vec> {
            if (!(s.lo < s.hi)) return {};
            double t = s.normal.dot(a);
            std::vector<Vec> out;
            if (std::abs(t - s.hi) <= tol) out.push_back(-s.normal);
            if (std::abs(t - s.lo) <= tol) out.push_back(s.normal);
            return out;
          },
          [&](auto const&) -> std::vector<Vec> { return {}; },
      },
      p);
}

std::vector<Vec> leaf_foot_points(Primitive const& p, Vec const& s) {
  return std::visit(
      overloaded{
          [&](HalfSpace const& h) -> std::vector<Vec> {
            return {hyperplane_project(h.normal, h.offset, s)};
          },
          [&](ClosedBall const& b) -> std::vector<Vec> {
            Vec w = s - b.center;
            double n = w.norm();
            if (n == 0) return {};
            return {b.center + (b.radius / n) * w, b.center - (b.radius / n) * w};
          },
          [&](BallComplement const& b) -> std::vector<Vec> {
            Vec w = s - b.center;
            double n = w.norm();
            if (n == 0) return {};
            return {b.center + (b.radius / n) * w, b.center - (b.radius / n) * w};
          },
          [&](Slab const& sl) -> std::vector<Vec> {
            std::vector<Vec> out{hyperplane_project(sl.normal, sl.lo, s)};
            if (sl.hi > sl.lo) out.push_back(hyperplane_project(sl.normal, sl.hi, s));
            return out;
          },
          [&](AffineSubspace const& a) -> std::vector<Vec> {
            if (static_cast<int>(a.basis.size()) == s.dim()) return {};
            return {affine_project(a, s)};
          },
          [&](FinitePointSet const& f) -> std::vector<Vec> { return f.points; },
      },
      p);
}

std::optional<Vec> leaf_random_boundary_point(Primitive const& p,
                                              Box const& box,
                                              std::mt19937_64& rng) {
  int dim = box.dim();
  return std::visit(
      overloaded{
          [&](HalfSpace const& h) -> std::optional<Vec> {
            return hyperplane_project(h.normal, h.offset, random_in_box(box, rng));
          },
          [&](ClosedBall const& b) -> std::optional<Vec> {
            return b.center + b.radius * random_unit(dim, rng);
          },
          [&](BallComplement const& b) -> std::optional<Vec> {
            return b.center + b.radius * random_unit(dim, rng);
          },
          [&](Slab const& s) -> std::optional<Vec> {
            std::bernoulli_distribution coin(0.5);
            double off = coin(rng) ? s.hi : s.lo;
            return hyperplane_project(s.normal, off, random_in_box(box, rng));
          },
          [&](AffineSubspace const& a) -> std::optional<Vec> {
            if (static_cast<int>(a.basis.size()) == dim) return std::nullopt;
            return affine_project(a, random_in_box(box, rng));
          },
          [&](FinitePointSet const& f) -> std::optional<Vec> {
            std::uniform_int_distribution<std::size_t> pick(0, f.points.size() - 1);
            return f.points[pick(rng)];
          },
      },
      p);
}

std::vector<Vec> leaf_boundary_lattice(Primitive const& p, Box const& box,
                                       double spacing) {
  Vec c = box.center();
  return std::visit(
      overloaded{
          [&](HalfSpace const& h) {
            return flat_lattice(hyperplane_project(h.normal, h.offset, c),
                                orthonormal_complement(h.normal), box, spacing);
          },
          [&](ClosedBall const& b) {
            return sphere_lattice(b.center, b.radius, box, spacing);
          },
          [&](BallComplement const& b) {
            return sphere_lattice(b.center, b.radius, box, spacing);
          },
          [&](Slab const& s) {
            auto t = orthonormal_complement(s.normal);
            auto out = flat_lattice(hyperplane_project(s.normal, s.lo, c), t, box,
                                    spacing);
            if (s.hi > s.lo) {
              auto up = flat_lattice(hyperplane_project(s.normal, s.hi, c), t,
                                     box, spacing);
              out.insert(out.end(), up.begin(), up.end());
            }
            return out;
          },
          [&](AffineSubspace const& a) {
            if (static_cast<int>(a.basis.size()) == box.dim()) {
              return std::vector<Vec>{};
            }
            return flat_lattice(affine_project(a, c), a.basis, box, spacing);
          },
          [&](FinitePointSet const& f) { return f.points; },
      },
      p);
}

}  // namespace exsphere::detail
