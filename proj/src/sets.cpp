// Copyright 2026 The exsphere Authors.
// SPDX-License-Identifier: Apache-2.0

#include "exsphere/sets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>

#include "primitive.hpp"

namespace exsphere {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kDykstraMaxIter = 10000;

using detail::LeafProjection;

struct NodeProjection {
  std::vector<Vec> points;
  double distance = kInf;
  bool continuum = false;
  bool approximate = false;
};

// Shrink a convex primitive by delta so that points inside it sit at depth
// at least delta in the original. Returns nullopt for primitives without
// interior.
std::optional<Primitive> shrink(Primitive const& p, int dim, double delta) {
  if (!detail::leaf_has_interior(p, dim)) return std::nullopt;
  if (auto const* h = std::get_if<HalfSpace>(&p)) {
    return HalfSpace{h->normal, h->offset - delta};
  }
  if (auto const* b = std::get_if<ClosedBall>(&p)) {
    if (b->radius <= delta) return std::nullopt;
    return ClosedBall{b->center, b->radius - delta};
  }
  if (auto const* s = std::get_if<Slab>(&p)) {
    if (s->hi - s->lo <= 2 * delta) return std::nullopt;
    return Slab{s->normal, s->lo + delta, s->hi - delta};
  }
  return p;
}

struct DykstraResult {
  Vec point;
  bool converged = false;
};

DykstraResult dykstra(std::vector<Primitive> const& parts, Vec const& x,
                      double tol) {
  int n = static_cast<int>(parts.size());
  std::vector<Vec> incr(static_cast<std::size_t>(n), Vec::zero(x.dim()));
  Vec cur = x;
  for (int it = 0; it < kDykstraMaxIter; ++it) {
    Vec start = cur;
    for (int i = 0; i < n; ++i) {
      auto& p = incr[static_cast<std::size_t>(i)];
      Vec y = detail::leaf_project(parts[static_cast<std::size_t>(i)], cur + p)
                  .points.front();
      p = cur + p - y;
      cur = y;
    }
    double worst = 0;
    for (auto const& part : parts) {
      worst = std::max(worst, detail::leaf_distance(part, cur));
    }
    if (worst <= tol && distance(start, cur) <= tol) return {cur, true};
  }
  return {cur, false};
}

std::vector<Primitive> child_shapes(CsgNode const& node) {
  std::vector<Primitive> out;
  for (auto const& c : node.children) out.push_back(c.shape);
  return out;
}

void collect_leaves(CsgNode const& n, std::vector<CsgNode const*>& out) {
  if (n.kind == CsgNode::Kind::leaf) {
    out.push_back(&n);
    return;
  }
  for (auto const& c : n.children) collect_leaves(c, out);
}

void collect_union_members(CsgNode const& n, std::vector<CsgNode const*>& out) {
  if (n.kind != CsgNode::Kind::set_union) {
    out.push_back(&n);
    return;
  }
  for (auto const& c : n.children) collect_union_members(c, out);
}

}  // namespace

//---------------------------------------------------------------------------//
char const* primitive_name(Primitive const& p) {
  static constexpr char const* names[] = {"halfspace", "ball",  "ballcomplement",
                                          "slab",      "affine", "points"};
  return names[p.index()];
}

CsgNode CsgNode::leaf(Primitive p, std::string label) {
  CsgNode n;
  n.kind = Kind::leaf;
  n.shape = std::move(p);
  n.label = std::move(label);
  return n;
}

CsgNode CsgNode::make_union(std::vector<CsgNode> children) {
  CsgNode n;
  n.kind = Kind::set_union;
  n.children = std::move(children);
  return n;
}

CsgNode CsgNode::make_intersection(std::vector<CsgNode> children) {
  CsgNode n;
  n.kind = Kind::set_intersection;
  n.children = std::move(children);
  return n;
}

bool Box::contains(Vec const& p, double pad) const {
  for (int i = 0; i < dim(); ++i) {
    if (p[i] < lo[i] - pad || p[i] > hi[i] + pad) return false;
  }
  return true;
}

//---------------------------------------------------------------------------//
namespace {

struct Loader {
  int dim;
  double diam;
  int next_label = 0;

  void run(CsgNode& n, std::string const& inherited) {
    if (n.label.empty()) n.label = inherited;
    switch (n.kind) {
      case CsgNode::Kind::leaf:
        n.shape = detail::normalize_primitive(std::move(n.shape), dim);
        if (n.label.empty()) n.label = "c" + std::to_string(next_label++);
        n.has_interior = detail::leaf_has_interior(n.shape, dim);
        return;
      case CsgNode::Kind::set_union:
        if (n.children.empty()) throw DomainError("union has no children");
        for (auto& c : n.children) run(c, n.label);
        n.has_interior = std::any_of(n.children.begin(), n.children.end(),
                                     [](auto const& c) { return c.has_interior; });
        return;
      case CsgNode::Kind::set_intersection:
        load_intersection(n);
        return;
    }
  }

  void load_intersection(CsgNode& n) {
    if (n.children.empty()) throw DomainError("intersection has no children");
    for (auto& c : n.children) {
      if (c.kind != CsgNode::Kind::leaf) {
        throw DomainError("intersection children must be primitives");
      }
      run(c, n.label);
      if (!detail::leaf_is_convex(c.shape)) {
        throw DomainError(std::string("intersection child '") +
                          primitive_name(c.shape) + "' is not convex");
      }
    }
    if (n.label.empty()) n.label = n.children.front().label;

    Vec seed = Vec::zero(dim);
    auto parts = child_shapes(n);
    auto hit = dykstra(parts, seed, 1e-12 * diam);
    bool nonempty = hit.converged;
    for (auto const& p : parts) {
      if (detail::leaf_distance(p, hit.point) > 1e-9 * diam) nonempty = false;
    }
    if (!nonempty) throw DomainError("intersection is empty");

    std::vector<Primitive> shrunk;
    n.has_interior = true;
    for (auto const& p : parts) {
      auto s = shrink(p, dim, 1e-6 * diam);
      if (!s) {
        n.has_interior = false;
        break;
      }
      shrunk.push_back(*s);
    }
    if (n.has_interior) {
      auto in = dykstra(shrunk, hit.point, 1e-12 * diam);
      for (auto const& p : shrunk) {
        if (detail::leaf_distance(p, in.point) > 1e-9 * diam) {
          n.has_interior = false;
        }
      }
      if (n.has_interior) n.interior_point = in.point;
    }
  }
};

}  // namespace

ClosedSetDesc::ClosedSetDesc(CsgNode root, Box box)
    : root_(std::move(root)), box_(std::move(box)) {
  if (box_.lo.dim() != box_.hi.dim()) {
    throw DomainError("bounding box corners differ in dimension");
  }
  for (int i = 0; i < box_.dim(); ++i) {
    if (!(box_.lo[i] < box_.hi[i])) {
      throw DomainError("bounding box must have lo < hi in every coordinate");
    }
  }
  diam_ = box_.diameter();
  Loader loader{dim(), diam_};
  loader.run(root_, {});
}

//---------------------------------------------------------------------------//
namespace {

bool node_contains(CsgNode const& n, Vec const& x, double slack) {
  switch (n.kind) {
    case CsgNode::Kind::leaf:
      return detail::leaf_contains(n.shape, x, slack);
    case CsgNode::Kind::set_union:
      for (auto const& c : n.children) {
        if (node_contains(c, x, slack)) return true;
      }
      return false;
    case CsgNode::Kind::set_intersection:
      for (auto const& c : n.children) {
        if (!node_contains(c, x, slack)) return false;
      }
      return true;
  }
  return false;
}

bool node_interior(CsgNode const& n, Vec const& x, double slack) {
  switch (n.kind) {
    case CsgNode::Kind::leaf:
      return detail::leaf_interior_contains(n.shape, x, slack);
    case CsgNode::Kind::set_union:
      for (auto const& c : n.children) {
        if (node_interior(c, x, slack)) return true;
      }
      return false;
    case CsgNode::Kind::set_intersection:
      for (auto const& c : n.children) {
        if (!node_interior(c, x, slack)) return false;
      }
      return true;
  }
  return false;
}

void cluster_into(std::vector<Vec>& reps, Vec const& p, double tol) {
  for (auto const& r : reps) {
    if (distance(r, p) <= tol) return;
  }
  reps.push_back(p);
}

NodeProjection node_project(CsgNode const& n, Vec const& x, double ctol,
                            double diam) {
  NodeProjection out;
  switch (n.kind) {
    case CsgNode::Kind::leaf: {
      if (auto const* f = std::get_if<FinitePointSet>(&n.shape)) {
        double best = detail::leaf_distance(n.shape, x);
        for (auto const& q : f->points) {
          if (distance(x, q) <= best + ctol) out.points.push_back(q);
        }
        out.distance = best;
        return out;
      }
      LeafProjection lp = detail::leaf_project(n.shape, x);
      out.points = std::move(lp.points);
      out.continuum = lp.continuum;
      out.distance = distance(x, out.points.front());
      return out;
    }
    case CsgNode::Kind::set_intersection: {
      auto parts = child_shapes(n);
      bool inside = true;
      for (auto const& p : parts) {
        if (!detail::leaf_contains(p, x, 0)) inside = false;
      }
      if (inside) {
        out.points = {x};
        out.distance = 0;
        return out;
      }
      auto r = dykstra(parts, x, 1e-13 * diam);
      out.points = {r.point};
      out.distance = distance(x, r.point);
      out.approximate = !r.converged;
      return out;
    }
    case CsgNode::Kind::set_union: {
      std::vector<NodeProjection> kids;
      double best = kInf;
      for (auto const& c : n.children) {
        kids.push_back(node_project(c, x, ctol, diam));
        best = std::min(best, kids.back().distance);
      }
      out.distance = best;
      for (auto const& k : kids) {
        if (k.distance > best + ctol) continue;
        out.continuum = out.continuum || k.continuum;
        out.approximate = out.approximate || k.approximate;
        for (auto const& p : k.points) {
          if (distance(x, p) <= best + ctol) cluster_into(out.points, p, ctol);
        }
      }
      return out;
    }
  }
  return out;
}

double node_distance(CsgNode const& n, Vec const& x, double diam) {
  switch (n.kind) {
    case CsgNode::Kind::leaf:
      return detail::leaf_distance(n.shape, x);
    case CsgNode::Kind::set_union: {
      double best = kInf;
      for (auto const& c : n.children) {
        best = std::min(best, node_distance(c, x, diam));
      }
      return best;
    }
    case CsgNode::Kind::set_intersection:
      return node_project(n, x, 0, diam).distance;
  }
  return kInf;
}

// Regular (interior-carrying) pieces: leaves with interior and
// intersections with interior, in DFS order.
void collect_regular(CsgNode const& n, std::vector<CsgNode const*>& out) {
  if (n.kind == CsgNode::Kind::set_union) {
    for (auto const& c : n.children) collect_regular(c, out);
    return;
  }
  if (n.has_interior) out.push_back(&n);
}

}  // namespace

bool ClosedSetDesc::contains(Vec const& x) const {
  return node_contains(root_, x, member_slack());
}

double ClosedSetDesc::distance(Vec const& x) const {
  if (contains(x)) return 0;
  return node_distance(root_, x, diam_);
}

ProjectionResult ClosedSetDesc::project(Vec const& x) const {
  ProjectionResult res;
  if (contains(x)) {
    res.points = {x};
    res.distance = 0;
    return res;
  }
  auto np = node_project(root_, x, cluster_tol(), diam_);
  std::sort(np.points.begin(), np.points.end(), lex_less);
  res.points = std::move(np.points);
  res.distance = np.distance;
  res.continuum = np.continuum;
  res.exactness = np.approximate ? Exactness::approximate : Exactness::exact;
  return res;
}

bool ClosedSetDesc::interior_contains(Vec const& x) const {
  if (node_interior(root_, x, member_slack())) return true;
  if (root_.kind != CsgNode::Kind::set_union) return false;
  // x may sit on a seam where two regular pieces meet; probe a tiny sphere.
  std::vector<CsgNode const*> reg;
  collect_regular(root_, reg);
  int holding = 0;
  for (auto const* r : reg) {
    if (node_contains(*r, x, member_slack())) ++holding;
  }
  if (holding < 2) return false;
  // Large enough that curved pieces meeting tangentially separate by more
  // than the membership slack.
  double eta = 1e-5 * diam_;
  std::mt19937_64 rng(0x5eed);
  for (int i = 0; i < 64; ++i) {
    Vec d = detail::random_unit(dim(), rng);
    if (!contains(x + eta * d)) return false;
  }
  for (int i = 0; i < dim(); ++i) {
    for (double s : {-1.0, 1.0}) {
      if (!contains(x + (s * eta) * Vec::unit(dim(), i))) return false;
    }
  }
  return true;
}

bool ClosedSetDesc::boundary_contains(Vec const& x) const {
  return contains(x) && !interior_contains(x);
}

bool ClosedSetDesc::closure_of_interior_contains(Vec const& x) const {
  std::vector<CsgNode const*> reg;
  collect_regular(root_, reg);
  for (auto const* r : reg) {
    if (node_contains(*r, x, member_slack())) return true;
  }
  return false;
}

std::vector<double> ClosedSetDesc::default_eps_schedule() const {
  return {1e-2 * diam_, 1e-4 * diam_, 1e-6 * diam_};
}

bool ClosedSetDesc::in_bdry_of_interior(Vec const& a) const {
  auto s = default_eps_schedule();
  return in_bdry_of_interior(a, s);
}

bool ClosedSetDesc::in_bdry_of_interior(
    Vec const& a, std::span<double const> eps_schedule) const {
  if (!boundary_contains(a)) {
    throw DomainError("in_bdry_of_interior: point " + to_string(a) +
                      " is not on the boundary");
  }
  std::vector<CsgNode const*> reg;
  collect_regular(root_, reg);
  double gap = kInf;
  for (auto const* r : reg) gap = std::min(gap, node_distance(*r, a, diam_));
  for (double eps : eps_schedule) {
    if (!(eps > 0)) throw DomainError("eps schedule must be positive");
    if (!(gap < eps)) return false;
    if (!interior_point_near(a, eps, 0xb0d1)) return false;
  }
  return true;
}

std::optional<Vec> ClosedSetDesc::interior_point_near(Vec const& a, double eps,
                                                      std::uint64_t seed,
                                                      int draws) const {
  if (!(eps > 0)) throw DomainError("eps must be positive");
  std::vector<CsgNode const*> reg;
  collect_regular(root_, reg);
  for (auto const* r : reg) {
    auto np = node_project(*r, a, 0, diam_);
    for (auto const& q : np.points) {
      double gap = exsphere::distance(q, a);
      if (gap >= eps) continue;
      double room = eps - gap;
      std::vector<Vec> cands;
      if (r->kind == CsgNode::Kind::leaf) {
        for (auto const& d :
             detail::leaf_inward_directions(r->shape, q, ball_tol())) {
          cands.push_back(q + (room / 2) * d);
        }
        if (gap == 0 && cands.empty() && detail::leaf_interior_contains(
                                             r->shape, q, member_slack())) {
          cands.push_back(q);
        }
      } else {
        Vec toward = r->interior_point - q;
        double len = toward.norm();
        if (len > 0) {
          cands.push_back(q + (std::min(room / 2, len / 2) / len) * toward);
        }
      }
      for (auto const& c : cands) {
        if (exsphere::distance(c, a) < eps && node_interior(*r, c, member_slack())) {
          return c;
        }
      }
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < draws; ++i) {
    double rad = eps * std::pow(u(rng), 1.0 / dim());
    Vec c = a + rad * detail::random_unit(dim(), rng);
    if (exsphere::distance(c, a) < eps && interior_contains(c)) return c;
  }
  return std::nullopt;
}

std::vector<BoundarySample> ClosedSetDesc::sample_boundary(
    int count, std::uint64_t seed) const {
  if (count < 1) throw DomainError("sample count must be at least 1");
  auto lv = leaves();
  std::mt19937_64 rng(seed);
  std::vector<BoundarySample> out;
  long attempts = 200L * count;
  std::size_t k = 0;
  for (long i = 0; i < attempts && static_cast<int>(out.size()) < count; ++i) {
    CsgNode const* leaf = lv[k++ % lv.size()];
    auto p = detail::leaf_random_boundary_point(leaf->shape, box_, rng);
    if (!p || !box_.contains(*p) || !boundary_contains(*p)) continue;
    out.push_back({*p, leaf->label});
  }
  return out;
}

std::vector<BoundarySample> ClosedSetDesc::boundary_lattice(
    double spacing) const {
  if (!(spacing > 0)) throw DomainError("lattice spacing must be positive");
  std::vector<BoundarySample> out;
  for (auto const* leaf : leaves()) {
    for (auto const& p : detail::leaf_boundary_lattice(leaf->shape, box_, spacing)) {
      if (boundary_contains(p)) out.push_back({p, leaf->label});
    }
  }
  return out;
}

std::string ClosedSetDesc::boundary_label(Vec const& a) const {
  // Only leaves of a union member that holds a: a leaf of an intersection can
  // pass near a without the intersection reaching it.
  std::vector<CsgNode const*> parts;
  collect_union_members(root_, parts);
  std::vector<CsgNode const*> cands;
  for (auto const* part : parts) {
    if (node_contains(*part, a, member_slack())) collect_leaves(*part, cands);
  }
  if (cands.empty()) cands = leaves();
  CsgNode const* best = nullptr;
  double bd = kInf;
  for (auto const* leaf : cands) {
    double d = detail::leaf_boundary_distance(leaf->shape, a);
    if (d < bd) {
      bd = d;
      best = leaf;
    }
  }
  return best ? best->label : std::string{};
}

std::vector<std::string> ClosedSetDesc::labels() const {
  std::vector<std::string> out;
  for (auto const* leaf : leaves()) {
    if (std::find(out.begin(), out.end(), leaf->label) == out.end()) {
      out.push_back(leaf->label);
    }
  }
  return out;
}

namespace {
void append_unique(std::vector<Vec>& out, Vec const& v, double tol) {
  for (auto const& w : out) {
    if (distance(v, w) <= tol) return;
  }
  out.push_back(v);
}
}  // namespace

std::vector<Vec> ClosedSetDesc::candidate_normals(Vec const& a) const {
  std::vector<Vec> out;
  for (auto const* leaf : leaves()) {
    for (auto const& v : detail::leaf_outward_normals(leaf->shape, a, ball_tol())) {
      append_unique(out, v, 1e-9);
    }
  }
  return out;
}

namespace {

// Primitives whose proximal normal cone leaf_outward_normals lists in full.
bool cone_listed(Primitive const& p, int dim) {
  if (auto af = std::get_if<AffineSubspace>(&p)) {
    return dim - static_cast<int>(af->basis.size()) == 1;
  }
  return !std::holds_alternative<FinitePointSet>(p);
}

std::optional<std::vector<Vec>> node_complete_normals(CsgNode const& n, Vec const& a,
                                                      double tol) {
  if (n.kind == CsgNode::Kind::leaf) {
    if (!cone_listed(n.shape, a.dim())) return std::nullopt;
    if (detail::leaf_boundary_distance(n.shape, a) > tol) return std::nullopt;
    auto v = detail::leaf_outward_normals(n.shape, a, tol);
    if (v.empty()) return std::nullopt;
    return v;
  }
  if (n.kind == CsgNode::Kind::set_intersection) {
    // Settled only when a sits on one child's boundary and strictly inside
    // the others.
    CsgNode const* active = nullptr;
    for (auto const& c : n.children) {
      if (detail::leaf_boundary_distance(c.shape, a) <= tol) {
        if (active) return std::nullopt;
        active = &c;
      } else if (!detail::leaf_interior_contains(c.shape, a, tol)) {
        return std::nullopt;
      }
    }
    return active ? node_complete_normals(*active, a, tol) : std::nullopt;
  }
  for (auto const& c : n.children) {
    if (auto v = node_complete_normals(c, a, tol)) return v;
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::vector<Vec>> ClosedSetDesc::complete_normals(Vec const& a) const {
  return node_complete_normals(root_, a, ball_tol());
}

std::vector<Vec> ClosedSetDesc::inward_directions(Vec const& a) const {
  std::vector<Vec> out;
  for (auto const* leaf : leaves()) {
    for (auto const& v : detail::leaf_inward_directions(leaf->shape, a, ball_tol())) {
      append_unique(out, v, 1e-9);
    }
  }
  return out;
}

std::vector<Vec> ClosedSetDesc::foot_points(Vec const& s) const {
  std::vector<Vec> out;
  for (auto const* leaf : leaves()) {
    for (auto const& p : detail::leaf_foot_points(leaf->shape, s)) {
      if (boundary_contains(p)) append_unique(out, p, cluster_tol());
    }
  }
  return out;
}

bool ClosedSetDesc::is_convex() const {
  CsgNode const* n = &root_;
  while (n->kind == CsgNode::Kind::set_union && n->children.size() == 1) {
    n = &n->children.front();
  }
  switch (n->kind) {
    case CsgNode::Kind::leaf:
      return detail::leaf_is_convex(n->shape);
    case CsgNode::Kind::set_intersection:
      return true;
    case CsgNode::Kind::set_union:
      return false;
  }
  return false;
}

std::optional<ClosedSetDesc> ClosedSetDesc::closure_of_interior() const {
  std::vector<CsgNode const*> reg;
  collect_regular(root_, reg);
  if (reg.empty()) return std::nullopt;
  std::vector<CsgNode> kids;
  for (auto const* r : reg) kids.push_back(*r);
  if (kids.size() == 1) return ClosedSetDesc(std::move(kids.front()), box_);
  return ClosedSetDesc(CsgNode::make_union(std::move(kids)), box_);
}

std::vector<CsgNode const*> ClosedSetDesc::leaves() const {
  std::vector<CsgNode const*> out;
  collect_leaves(root_, out);
  return out;
}

}  // namespace exsphere
