// Copyright 2026 The exsphere Authors.
// SPDX-License-Identifier: Apache-2.0

#include "exsphere/geom.hpp"

#include <ostream>
#include <sstream>

namespace exsphere {

namespace {
void check_dim(int d) {
  if (d != 2 && d != 3) {
    throw DomainError("dimension must be 2 or 3, got " + std::to_string(d));
  }
}

void check_same(Vec const& a, Vec const& b) {
  if (a.dim() != b.dim()) {
    throw DomainError("dimension mismatch between vectors");
  }
}
}  // namespace

Vec::Vec(int dim) : dim_(dim) { check_dim(dim); }

Vec::Vec(std::initializer_list<double> coords)
    : dim_(static_cast<int>(coords.size())) {
  check_dim(dim_);
  std::size_t i = 0;
  for (double v : coords) {
    c_[i++] = v;
  }
  if (!all_finite()) {
    throw DomainError("vector coordinates must be finite");
  }
}

Vec Vec::unit(int dim, int axis) {
  Vec v(dim);
  v[axis] = 1.0;
  return v;
}

Vec& Vec::operator+=(Vec const& o) {
  check_same(*this, o);
  for (int i = 0; i < dim_; ++i) c_[i] += o.c_[i];
  return *this;
}

Vec& Vec::operator-=(Vec const& o) {
  check_same(*this, o);
  for (int i = 0; i < dim_; ++i) c_[i] -= o.c_[i];
  return *this;
}

Vec& Vec::operator*=(double s) {
  for (int i = 0; i < dim_; ++i) c_[i] *= s;
  return *this;
}

Vec& Vec::operator/=(double s) {
  for (int i = 0; i < dim_; ++i) c_[i] /= s;
  return *this;
}

double Vec::dot(Vec const& o) const {
  check_same(*this, o);
  double s = 0;
  for (int i = 0; i < dim_; ++i) s += c_[i] * o.c_[i];
  return s;
}

Vec Vec::normalized() const {
  double n = norm();
  if (!(n > 0)) throw DomainError("cannot normalize a zero vector");
  return *this / n;
}

bool Vec::all_finite() const {
  for (int i = 0; i < dim_; ++i) {
    if (!std::isfinite(c_[i])) return false;
  }
  return true;
}

bool operator==(Vec const& a, Vec const& b) {
  if (a.dim_ != b.dim_) return false;
  for (int i = 0; i < a.dim_; ++i) {
    if (a.c_[i] != b.c_[i]) return false;
  }
  return true;
}

bool lex_less(Vec const& a, Vec const& b) {
  check_same(a, b);
  for (int i = 0; i < a.dim_; ++i) {
    if (a.c_[i] < b.c_[i]) return true;
    if (a.c_[i] > b.c_[i]) return false;
  }
  return false;
}

Vec operator+(Vec a, Vec const& b) { return a += b; }
Vec operator-(Vec a, Vec const& b) { return a -= b; }
Vec operator-(Vec a) { return a *= -1.0; }
Vec operator*(Vec a, double s) { return a *= s; }
Vec operator*(double s, Vec a) { return a *= s; }
Vec operator/(Vec a, double s) { return a /= s; }

std::ostream& operator<<(std::ostream& os, Vec const& v) {
  os << '(';
  for (int i = 0; i < v.dim(); ++i) {
    if (i) os << ',';
    os << v[i];
  }
  return os << ')';
}

std::string to_string(Vec const& v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

Vec require_unit(Vec const& v, char const* what) {
  double n = v.norm();
  double dev = std::abs(n - 1.0);
  if (dev <= kUnitTol) return v;
  if (dev <= kRenormTol) return v / n;
  throw DomainError(std::string(what) + " must be a unit vector, norm = " +
                    std::to_string(n));
}

//---------------------------------------------------------------------------//
ExtReal ExtReal::finite(double v) {
  if (!std::isfinite(v) || v < 0) {
    throw DomainError("ExtReal::finite expects a finite value >= 0");
  }
  ExtReal r;
  r.v_ = v;
  return r;
}

ExtReal ExtReal::from_double(double v) {
  if (std::isinf(v) && v > 0) return infinity();
  return finite(v);
}

ExtReal ext_min(ExtReal a, ExtReal b) { return b < a ? b : a; }

std::ostream& operator<<(std::ostream& os, ExtReal r) {
  if (r.is_infinite()) return os << "inf";
  return os << r.value();
}

std::string to_string(ExtReal r) {
  std::ostringstream os;
  os.precision(17);
  os << r;
  return os.str();
}

//---------------------------------------------------------------------------//
Ball::Ball(Vec c, double r, Closedness cl)
    : center(std::move(c)), radius(r), closedness(cl) {
  if (!(radius > 0) || !std::isfinite(radius)) {
    throw DomainError("ball radius must be positive and finite");
  }
}

bool Ball::contains(Vec const& p, double tol) const {
  double d = distance(p, center);
  return closedness == Closedness::closed ? d <= radius + tol
                                          : d < radius + tol;
}

Segment::Segment(Vec a, Vec b, bool allow_degenerate)
    : p(std::move(a)), q(std::move(b)) {
  if (!allow_degenerate && p == q) {
    throw DomainError("segment endpoints coincide");
  }
}

//---------------------------------------------------------------------------//
std::optional<std::pair<double, double>>
sphere_line_roots(Vec const& x, Vec const& xi, Vec const& center, double eps) {
  if (!(eps > 0)) throw DomainError("sphere radius must be positive");
  Vec dir = require_unit(xi, "xi");
  Vec w = x - center;
  double b = w.dot(dir);
  double c = w.norm2() - eps * eps;
  double disc = b * b - c;
  if (disc <= kDiscriminantFloor) return std::nullopt;
  double s = std::sqrt(disc);
  // Stable pairing: compute the larger-magnitude root first.
  double q = -b - std::copysign(s, b);
  double t1, t2;
  if (q != 0) {
    t1 = q;
    t2 = c / q;
  } else {
    t1 = -s;
    t2 = s;
  }
  if (t1 > t2) std::swap(t1, t2);
  return std::make_pair(t1, t2);
}

}  // namespace exsphere
