// Copyright 2026 The exsphere Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Small fixed-dimension vectors (n = 2 or 3), extended nonnegative reals,
// balls and segments.

#pragma once

#include <array>
#include <compare>
#include <cmath>
#include <initializer_list>
#include <iosfwd>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace exsphere {

/// Raised when an argument violates an operation's precondition.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

//---------------------------------------------------------------------------//
/*!
 * Point or vector in R^2 or R^3.
 *
 * The dimension is carried at runtime so one scene type serves both cases.
 * Mixing dimensions in arithmetic is a DomainError.
 */
class Vec {
 public:
  Vec() = default;
  explicit Vec(int dim);
  Vec(std::initializer_list<double> coords);
  Vec(double x, double y) : Vec({x, y}) {}
  Vec(double x, double y, double z) : Vec({x, y, z}) {}

  static Vec zero(int dim) { return Vec(dim); }
  static Vec unit(int dim, int axis);

  int dim() const { return dim_; }
  double operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  double& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }

  Vec& operator+=(Vec const& o);
  Vec& operator-=(Vec const& o);
  Vec& operator*=(double s);
  Vec& operator/=(double s);

  double dot(Vec const& o) const;
  double norm2() const { return dot(*this); }
  double norm() const { return std::sqrt(norm2()); }
  Vec normalized() const;
  bool all_finite() const;

  friend bool operator==(Vec const& a, Vec const& b);
  // Lexicographic ordering on coordinates.
  friend bool lex_less(Vec const& a, Vec const& b);

 private:
  std::array<double, 3> c_{};
  int dim_ = 0;
};

Vec operator+(Vec a, Vec const& b);
Vec operator-(Vec a, Vec const& b);
Vec operator-(Vec a);
Vec operator*(Vec a, double s);
Vec operator*(double s, Vec a);
Vec operator/(Vec a, double s);

inline double distance(Vec const& a, Vec const& b) { return (a - b).norm(); }
bool lex_less(Vec const& a, Vec const& b);

std::ostream& operator<<(std::ostream& os, Vec const& v);
std::string to_string(Vec const& v);

inline constexpr double kUnitTol = 1e-9;
inline constexpr double kRenormTol = 1e-6;

/// Return v as a unit vector: accepted as is within 1e-9, renormalized
/// within 1e-6, rejected otherwise.
Vec require_unit(Vec const& v, char const* what = "direction");

//---------------------------------------------------------------------------//
/*!
 * Nonnegative extended real: a finite value >= 0 or +infinity.
 */
class ExtReal {
 public:
  constexpr ExtReal() = default;
  static ExtReal finite(double v);
  static constexpr ExtReal infinity() {
    ExtReal r;
    r.v_ = std::numeric_limits<double>::infinity();
    return r;
  }
  // Accepts +inf as well as finite nonnegative values.
  static ExtReal from_double(double v);

  bool is_infinite() const { return std::isinf(v_); }
  bool is_finite() const { return !is_infinite(); }
  // +inf is returned as the IEEE infinity.
  double value() const { return v_; }
  ExtReal half() const { return from_double(v_ / 2); }

  friend auto operator<=>(ExtReal a, ExtReal b) = default;
  friend bool operator==(ExtReal a, ExtReal b) = default;

 private:
  double v_ = 0.0;
};

ExtReal ext_min(ExtReal a, ExtReal b);
std::ostream& operator<<(std::ostream& os, ExtReal r);
std::string to_string(ExtReal r);

//---------------------------------------------------------------------------//
enum class Closedness { open, closed };

struct Ball {
  Vec center;
  double radius = 0;
  Closedness closedness = Closedness::closed;

  Ball() = default;
  Ball(Vec c, double r, Closedness cl = Closedness::closed);
  bool contains(Vec const& p, double tol = 0) const;
};

struct Segment {
  Vec p;
  Vec q;
  bool open_p = false;
  bool open_q = false;

  Segment() = default;
  Segment(Vec a, Vec b, bool allow_degenerate = false);
  Vec at(double s) const { return p + s * (q - p); }
  double length() const { return distance(p, q); }
};

//---------------------------------------------------------------------------//
/*!
 * Crossings of the line {x + t xi} with the sphere S(center; eps).
 *
 * Solves f(t) = |x + t xi - center|^2 - eps^2 = t^2 + 2 t <x - center, xi>
 * + |x - center|^2 - eps^2. Returns (t1, t2) with t1 < t2 when the reduced
 * discriminant exceeds 1e-12; f < 0 exactly on (t1, t2). Tangent or
 * missing lines give nullopt.
 */
std::optional<std::pair<double, double>>
sphere_line_roots(Vec const& x, Vec const& xi, Vec const& center, double eps);

inline constexpr double kDiscriminantFloor = 1e-12;

}  // namespace exsphere
