// Copyright 2026 The exsphere Authors.
// SPDX-License-Identifier: Apache-2.0

#include "exsphere/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace exsphere {

using nlohmann::ordered_json;

namespace {

ordered_json vec_json(Vec const& v) {
  ordered_json a = ordered_json::array();
  for (int i = 0; i < v.dim(); ++i) a.push_back(v[i]);
  return a;
}

ordered_json ext_json(ExtReal r) {
  if (r.is_infinite()) return "inf";
  return r.value();
}

ordered_json vecs_json(std::vector<Vec> const& vs) {
  ordered_json a = ordered_json::array();
  for (auto const& v : vs) a.push_back(vec_json(v));
  return a;
}

ordered_json segment_json(NormalSegment const& s) {
  return {{"base", vec_json(s.a)}, {"zeta", vec_json(s.zeta)}, {"length", s.length}};
}

ordered_json condition_json(ConditionReport const& rep) {
  ordered_json j;
  j["verdict"] = to_string(rep.verdict);
  j["samples"] = rep.records.size();
  j["unclassified"] = rep.unclassified;
  j["density"] = rep.density;
  j["seed"] = rep.seed;
  ordered_json recs = ordered_json::array();
  for (auto const& r : rep.records) {
    ordered_json o;
    o["a"] = vec_json(r.a);
    o["label"] = r.label;
    o["class"] = to_string(r.cls);
    o["required"] = ext_json(r.required);
    o["verdict"] = to_string(r.verdict);
    o["normals"] = r.normals.size();
    if (r.deciding) {
      auto const& n = r.normals[*r.deciding];
      o["deciding_zeta"] = vec_json(n.zeta);
      o["deciding_realization"] = ext_json(n.realization);
    }
    if (!r.note.empty()) o["note"] = r.note;
    recs.push_back(std::move(o));
  }
  if (rep.certificate) {
    j["certificate"] = recs[*rep.certificate];
  } else {
    j["certificate"] = nullptr;
  }
  j["records"] = std::move(recs);
  return j;
}

ordered_json witness_json(WitnessBall const& w) {
  ordered_json o;
  o["case"] = case_tag(w.tag);
  o["rho"] = ext_json(w.rho);
  if (w.ball) {
    o["center"] = vec_json(w.ball->center);
    o["radius"] = w.ball->radius;
  }
  if (w.direction) {
    o["direction"] = vec_json(*w.direction);
    o["deltas"] = w.deltas;
  }
  o["a_x"] = vec_json(w.trace.a_x);
  o["halvings"] = w.trace.halvings;
  return o;
}

ordered_json sconvex_json(SConvexityReport const& rep) {
  ordered_json j;
  j["verdict"] = to_string(rep.verdict);
  j["segments"] = rep.segments.size();
  j["pairs_tested"] = rep.pairs_tested;
  j["foot_tests"] = rep.foot_tests;
  if (rep.violation) {
    j["violation"] = {{"first", segment_json(rep.violation->first)},
                      {"second", segment_json(rep.violation->second)},
                      {"meet", vec_json(rep.violation->s)}};
  } else {
    j["violation"] = nullptr;
  }
  return j;
}

ordered_json up_json(UpReport const& rep) {
  ordered_json j;
  j["verdict"] = to_string(rep.verdict);
  j["located"] = rep.located.size();
  if (rep.certificate) {
    auto const& r = rep.located[*rep.certificate];
    j["certificate"] = {{"x", vec_json(r.x)},
                        {"clusters", r.clusters},
                        {"projections", vecs_json(r.projections)}};
  } else {
    j["certificate"] = nullptr;
  }
  return j;
}

ordered_json open_json(OpenReport const& rep) {
  ordered_json j;
  j["verdict"] = to_string(rep.verdict);
  j["samples"] = rep.records.size();
  if (rep.certificate) {
    j["certificate"] = vec_json(rep.records[*rep.certificate].x);
  } else {
    j["certificate"] = nullptr;
  }
  return j;
}

std::string scalar_text(ordered_json const& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "none";
  if (v.is_array()) {
    bool flat = true;
    for (auto const& e : v) flat = flat && !e.is_structured();
    if (flat) {
      std::string s = "(";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += scalar_text(v[i]);
      }
      return s + ")";
    }
  }
  return v.dump();
}

bool is_flat(ordered_json const& v) {
  if (!v.is_structured()) return true;
  if (!v.is_array()) return false;
  for (auto const& e : v) {
    if (e.is_structured()) return false;
  }
  return true;
}

void text_of(ordered_json const& j, int indent, std::ostream& os) {
  std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (is_flat(it.value())) {
        os << pad << it.key() << ": " << scalar_text(it.value()) << '\n';
      } else {
        os << pad << it.key() << ":\n";
        text_of(it.value(), indent + 2, os);
      }
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (is_flat(j[i])) {
        os << pad << "- " << scalar_text(j[i]) << '\n';
      } else {
        os << pad << "- [" << i << "]\n";
        text_of(j[i], indent + 2, os);
      }
    }
  }
}

}  // namespace

//---------------------------------------------------------------------------//
struct RunReport::Impl {
  ordered_json doc;
  ordered_json timings = ordered_json::object();
  Verdict verdict = Verdict::vacuous;
};

RunReport::RunReport(std::string subcommand, std::string scene, std::uint64_t seed)
    : impl_(std::make_unique<Impl>()) {
  impl_->doc["subcommand"] = std::move(subcommand);
  impl_->doc["scene"] = std::move(scene);
  impl_->doc["seed"] = seed;
}

RunReport::~RunReport() = default;
RunReport::RunReport(RunReport&&) noexcept = default;
RunReport& RunReport::operator=(RunReport&&) noexcept = default;

void RunReport::note_verdict(Verdict v) { impl_->verdict = combine(impl_->verdict, v); }

void RunReport::add_condition(std::string const& key, ConditionReport const& rep) {
  impl_->doc[key] = condition_json(rep);
  note_verdict(rep.verdict);
}

void RunReport::add_cover(std::string const& key,
                          std::vector<CoverAttempt> const& attempts,
                          CoverReport const& verified) {
  ordered_json j;
  int failures = 0;
  ordered_json items = ordered_json::array();
  for (std::size_t i = 0; i < attempts.size(); ++i) {
    auto const& a = attempts[i];
    ordered_json o;
    o["x"] = vec_json(a.x);
    if (a.witness) {
      o["witness"] = witness_json(*a.witness);
    } else {
      o["witness"] = nullptr;
      o["error"] = a.error;
      ++failures;
    }
    if (i < verified.records.size()) {
      o["verified"] = verified.records[i].ok;
      if (!verified.records[i].diagnostics.empty()) {
        o["diagnostics"] = verified.records[i].diagnostics;
      }
    }
    items.push_back(std::move(o));
  }
  Verdict v = failures > 0 ? Verdict::fails : verified.verdict;
  j["verdict"] = to_string(v);
  j["points"] = attempts.size();
  j["construction_failures"] = failures;
  j["verification_violations"] = verified.violations;
  j["witnesses"] = std::move(items);
  impl_->doc[key] = std::move(j);
  note_verdict(v);
}

void RunReport::add_sconvexity(std::string const& key, SConvexityReport const& rep) {
  impl_->doc[key] = sconvex_json(rep);
  note_verdict(rep.verdict);
}

void RunReport::add_up(std::string const& key, UpReport const& rep) {
  impl_->doc[key] = up_json(rep);
  note_verdict(rep.verdict);
}

void RunReport::add_open(std::string const& key, OpenReport const& rep) {
  impl_->doc[key] = open_json(rep);
  note_verdict(rep.verdict);
}

void RunReport::add_harness(HarnessReport const& rep) {
  ordered_json j;
  j["i"] = to_string(rep.i);
  j["ii"] = to_string(rep.ii);
  j["iii"] = to_string(rep.iii);
  j["consistent"] = rep.consistent;
  j["condition"] = condition_json(rep.condition);
  j["sup_hull_convexity"] = sconvex_json(rep.sup_convex);
  j["r_hull_convexity"] = sconvex_json(rep.r_convex);
  j["unique_projection"] = up_json(rep.up);
  j["o_open"] = open_json(rep.open);
  impl_->doc["harness"] = std::move(j);
  note_verdict(combine(combine(rep.i, rep.ii), rep.iii));
}

void RunReport::add_timing(std::string const& key, double seconds) {
  impl_->timings[key] = seconds;
}

Verdict RunReport::verdict() const {
  return impl_->verdict == Verdict::vacuous ? Verdict::holds : impl_->verdict;
}

std::uint64_t fnv1a64(std::string const& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string RunReport::digest() const {
  ordered_json d = impl_->doc;
  d["verdict"] = to_string(verdict());
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(d.dump())));
  return buf;
}

namespace {
ordered_json full_doc(ordered_json const& doc, Verdict v, std::string const& digest,
                      ordered_json const& timings) {
  ordered_json out;
  out["verdict"] = to_string(v);
  out["digest"] = digest;
  for (auto it = doc.begin(); it != doc.end(); ++it) out[it.key()] = it.value();
  out["timings"] = timings;
  return out;
}
}  // namespace

std::string RunReport::to_json() const {
  return full_doc(impl_->doc, verdict(), digest(), impl_->timings).dump(2) + "\n";
}

std::string RunReport::to_text() const {
  std::ostringstream os;
  text_of(full_doc(impl_->doc, verdict(), digest(), impl_->timings), 0, os);
  return os.str();
}

//---------------------------------------------------------------------------//
namespace {

using Poly = std::vector<std::pair<double, double>>;

// Keep the part of a convex polygon with a x + b y <= c.
Poly clip(Poly const& in, double a, double b, double c) {
  Poly out;
  for (std::size_t i = 0; i < in.size(); ++i) {
    auto p = in[i], q = in[(i + 1) % in.size()];
    double fp = a * p.first + b * p.second - c;
    double fq = a * q.first + b * q.second - c;
    if (fp <= 0) out.push_back(p);
    if ((fp < 0) != (fq < 0) && fp != fq) {
      double t = fp / (fp - fq);
      out.push_back({p.first + t * (q.first - p.first), p.second + t * (q.second - p.second)});
    }
  }
  return out;
}

Poly box_poly(Box const& b) {
  return {{b.lo[0], b.lo[1]}, {b.hi[0], b.lo[1]}, {b.hi[0], b.hi[1]}, {b.lo[0], b.hi[1]}};
}

Poly circle_poly(double cx, double cy, double r) {
  Poly p;
  for (int k = 0; k < 256; ++k) {
    double t = 2 * M_PI * k / 256;
    p.push_back({cx + r * std::cos(t), cy + r * std::sin(t)});
  }
  return p;
}

// Intersect the polygon with a convex leaf (only leaves with interior).
Poly clip_leaf(Poly poly, Primitive const& p) {
  if (auto h = std::get_if<HalfSpace>(&p)) {
    return clip(poly, h->normal[0], h->normal[1], h->offset);
  }
  if (auto s = std::get_if<Slab>(&p)) {
    poly = clip(poly, s->normal[0], s->normal[1], s->hi);
    return clip(poly, -s->normal[0], -s->normal[1], -s->lo);
  }
  if (auto b = std::get_if<ClosedBall>(&p)) {
    Poly c = circle_poly(b->center[0], b->center[1], b->radius);
    for (int k = 0; k < 256; ++k) {
      double t = 2 * M_PI * (k + 0.5) / 256;
      double nx = std::cos(t), ny = std::sin(t);
      poly = clip(poly, nx, ny, nx * b->center[0] + ny * b->center[1] + b->radius);
    }
    return poly;
  }
  return {};
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct Svg {
  Box box;
  double stroke;
  std::ostringstream os;

  std::string X(double x) const { return fmt(x); }
  std::string Y(double y) const { return fmt(box.lo[1] + box.hi[1] - y); }

  void polygon(Poly const& p, char const* fill) {
    if (p.size() < 3) return;
    os << "  <polygon fill=\"" << fill << "\" points=\"";
    for (auto const& [x, y] : p) os << X(x) << ',' << Y(y) << ' ';
    os << "\"/>\n";
  }
  void line(double x1, double y1, double x2, double y2, char const* color, double w) {
    os << "  <line x1=\"" << X(x1) << "\" y1=\"" << Y(y1) << "\" x2=\"" << X(x2)
       << "\" y2=\"" << Y(y2) << "\" stroke=\"" << color << "\" stroke-width=\""
       << fmt(w) << "\"/>\n";
  }
  void dot(double x, double y, double r, char const* color) {
    os << "  <circle cx=\"" << X(x) << "\" cy=\"" << Y(y) << "\" r=\"" << fmt(r)
       << "\" fill=\"" << color << "\"/>\n";
  }
  void ring(double x, double y, double r, char const* color) {
    os << "  <circle cx=\"" << X(x) << "\" cy=\"" << Y(y) << "\" r=\"" << fmt(r)
       << "\" fill=\"" << color << "\" fill-opacity=\"0.15\" stroke=\"" << color
       << "\" stroke-width=\"" << fmt(stroke) << "\"/>\n";
  }

  // Clip the line p + t d to the box and draw it.
  void infinite_line(Vec const& p, Vec const& d, char const* color) {
    double t0 = -1e300, t1 = 1e300;
    for (int i = 0; i < 2; ++i) {
      if (std::abs(d[i]) < 1e-15) {
        if (p[i] < box.lo[i] || p[i] > box.hi[i]) return;
        continue;
      }
      double a = (box.lo[i] - p[i]) / d[i], b = (box.hi[i] - p[i]) / d[i];
      t0 = std::max(t0, std::min(a, b));
      t1 = std::min(t1, std::max(a, b));
    }
    if (t0 > t1) return;
    line(p[0] + t0 * d[0], p[1] + t0 * d[1], p[0] + t1 * d[0], p[1] + t1 * d[1], color,
         2 * stroke);
  }

  void leaf(Primitive const& p) {
    std::visit(
        [&](auto const& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, BallComplement>) {
            os << "  <path fill=\"" << kColorSet << "\" fill-rule=\"evenodd\" d=\"M"
               << X(box.lo[0]) << ',' << Y(box.lo[1]) << " H" << X(box.hi[0]) << " V"
               << Y(box.hi[1]) << " H" << X(box.lo[0]) << " Z M"
               << X(s.center[0] + s.radius) << ',' << Y(s.center[1]) << " A"
               << fmt(s.radius) << ',' << fmt(s.radius) << " 0 1,0 "
               << X(s.center[0] - s.radius) << ',' << Y(s.center[1]) << " A"
               << fmt(s.radius) << ',' << fmt(s.radius) << " 0 1,0 "
               << X(s.center[0] + s.radius) << ',' << Y(s.center[1]) << " Z\"/>\n";
          } else if constexpr (std::is_same_v<T, FinitePointSet>) {
            for (auto const& q : s.points) dot(q[0], q[1], 3 * stroke, kColorSet);
          } else if constexpr (std::is_same_v<T, AffineSubspace>) {
            if (s.basis.empty()) {
              dot(s.point[0], s.point[1], 3 * stroke, kColorSet);
            } else if (s.basis.size() == 1 || s.point.dim() == 3) {
              infinite_line(s.point, s.basis.front(), kColorSet);
            } else {
              polygon(box_poly(box), kColorSet);
            }
          } else if constexpr (std::is_same_v<T, Slab>) {
            if (s.lo == s.hi) {
              Vec d(-s.normal[1], s.normal[0]);
              infinite_line(s.lo * s.normal, d, kColorSet);
            } else {
              polygon(clip_leaf(box_poly(box), p), kColorSet);
            }
          } else {
            polygon(clip_leaf(box_poly(box), p), kColorSet);
          }
        },
        p);
  }

  void node(CsgNode const& n) {
    if (n.kind == CsgNode::Kind::leaf) {
      leaf(n.shape);
    } else if (n.kind == CsgNode::Kind::set_union) {
      for (auto const& c : n.children) node(c);
    } else {
      Poly poly = box_poly(box);
      bool solid = true;
      for (auto const& c : n.children) {
        if (!std::holds_alternative<HalfSpace>(c.shape) &&
            !std::holds_alternative<ClosedBall>(c.shape) &&
            !(std::holds_alternative<Slab>(c.shape) &&
              std::get<Slab>(c.shape).lo < std::get<Slab>(c.shape).hi)) {
          solid = false;
        }
        poly = clip_leaf(poly, c.shape);
      }
      if (solid) {
        polygon(poly, kColorSet);
      } else {
        // Lower-dimensional pieces: outline whatever survives clipping.
        for (auto const& c : n.children) leaf(c.shape);
      }
    }
  }
};

}  // namespace

std::string render_svg(ClosedSetDesc const& set, SvgLayers const& layers) {
  Svg s;
  s.box = set.box();
  s.stroke = set.diameter() / 600;
  double w = s.box.hi[0] - s.box.lo[0], h = s.box.hi[1] - s.box.lo[1];
  std::ostringstream head;
  head << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\""
       << fmt(s.box.lo[0]) << ' ' << fmt(s.box.lo[1]) << ' ' << fmt(w) << ' '
       << fmt(h) << "\" width=\"600\" height=\"" << fmt(600 * h / w) << "\">\n"
       << "  <rect x=\"" << fmt(s.box.lo[0]) << "\" y=\"" << fmt(s.box.lo[1])
       << "\" width=\"" << fmt(w) << "\" height=\"" << fmt(h)
       << "\" fill=\"white\"/>\n";
  s.node(set.root());
  for (auto const& seg : layers.segments) {
    Vec e = seg.end();
    s.line(seg.a[0], seg.a[1], e[0], e[1], kColorSegment, s.stroke);
  }
  for (auto const& b : layers.witnesses) {
    s.ring(b.center[0], b.center[1], b.radius, kColorWitness);
  }
  for (auto const& x : layers.witness_points) s.dot(x[0], x[1], 2 * s.stroke, kColorWitness);
  if (layers.violating_pair) {
    for (auto const* seg : {&layers.violating_pair->first, &layers.violating_pair->second}) {
      Vec e = seg->end();
      s.line(seg->a[0], seg->a[1], e[0], e[1], kColorViolation, 2 * s.stroke);
    }
    s.dot(layers.violating_pair->s[0], layers.violating_pair->s[1], 4 * s.stroke,
          kColorViolation);
  }
  for (auto const& v : layers.violations) s.dot(v[0], v[1], 4 * s.stroke, kColorViolation);
  return head.str() + s.os.str() + "</svg>\n";
}

}  // namespace exsphere
