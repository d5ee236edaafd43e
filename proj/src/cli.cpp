// Copyright 2026 The exsphere Authors.
// SPDX-License-Identifier: Apache-2.0

#include "exsphere/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "exsphere/ballcover.hpp"
#include "exsphere/conditions.hpp"
#include "exsphere/report.hpp"
#include "exsphere/scene.hpp"
#include "exsphere/sconvexity.hpp"

namespace exsphere {

namespace {

struct Flags {
  std::string scene;
  std::optional<std::uint64_t> seed;
  std::optional<int> samples;
  std::optional<int> density;
  std::optional<double> rho_max;
  std::string delta_list;
  std::string points;
  std::string svg;
  std::string json_report;
  std::string domain = "abar";
  bool serial = false;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

struct Run {
  Scene scene;
  Flags const& f;
  Exec exec;
  std::uint64_t seed;
  int density;
  double rho_max;

  Run(Scene s, Flags const& flags)
      : scene(std::move(s)),
        f(flags),
        exec(flags.serial ? Exec::serial : Exec::parallel),
        seed(flags.seed.value_or(scene.samples.seed)),
        density(flags.density.value_or(scene.samples.density)),
        rho_max(flags.rho_max.value_or(0)) {}

  CheckOptions check_options() const {
    CheckOptions o;
    o.samples = f.samples.value_or(scene.samples.boundary);
    o.seed = seed;
    o.density = density;
    o.rho_max = rho_max;
    o.exec = exec;
    return o;
  }

  std::vector<Vec> explicit_points() const {
    if (!f.points.empty()) return parse_point_list(f.points);
    return scene.samples.points;
  }

  std::vector<double> deltas() const {
    if (!f.delta_list.empty()) return parse_number_list(f.delta_list);
    return scene.samples.deltas;
  }

  ConditionReport check(RunReport& rep, SvgLayers& svg) const {
    Stopwatch sw;
    auto opts = check_options();
    auto pts = f.points.empty() ? std::vector<Vec>{} : parse_point_list(f.points);
    ConditionReport c = pts.empty()
                            ? check_extended_condition(scene.set, scene.radius, opts)
                            : check_extended_condition(scene.set, scene.radius, pts, opts);
    rep.add_condition("condition", c);
    rep.add_timing("condition", sw.seconds());
    for (auto const& r : c.records) {
      if (r.verdict == Verdict::fails) svg.violations.push_back(r.a);
    }
    return c;
  }

  void cover(RunReport& rep, SvgLayers& svg) const {
    Stopwatch sw;
    auto pts = explicit_points();
    if (pts.empty()) {
      int n = f.samples.value_or(scene.samples.probes);
      pts = sample_complement(scene.set, n, seed);
    }
    auto ds = deltas();
    WitnessOptions wo;
    wo.density = density;
    wo.rho_max = rho_max;
    wo.seed = seed;
    auto attempts = build_cover(scene.set, scene.radius, pts, ds, wo, exec);
    auto witness_of = [&](Vec const& x) -> WitnessBall {
      for (auto const& a : attempts) {
        if (a.x == x) {
          if (a.witness) return *a.witness;
          throw std::runtime_error(a.error);
        }
      }
      throw std::runtime_error("no attempt for " + to_string(x));
    };
    auto rho_of = [&](Vec const& x) { return radius_function_rho(scene.set, scene.radius, x); };
    auto verified = verify_union_of_balls(scene.set, rho_of, witness_of, pts, ds, exec);
    rep.add_cover("cover", attempts, verified);
    rep.add_timing("cover", sw.seconds());
    for (std::size_t i = 0; i < attempts.size(); ++i) {
      auto const& a = attempts[i];
      if (a.witness && a.witness->ball) {
        svg.witnesses.push_back(*a.witness->ball);
        svg.witness_points.push_back(a.x);
      }
      if (!a.witness || !verified.records[i].ok) svg.violations.push_back(a.x);
    }
  }

  void sconvex(RunReport& rep, SvgLayers& svg) const {
    Stopwatch sw;
    HullContext ctx(scene.set, scene.radius, {density, rho_max});
    Membership in_s;
    if (f.domain == "space") {
      in_s = [](Vec const&) { return true; };
    } else if (f.domain == "abar") {
      in_s = [&](Vec const& x) { return ctx.in_hull_r(x); };
    } else {
      in_s = [&](Vec const& x) { return ctx.in_hull_sup(x); };
    }
    SConvexOptions so;
    so.seed = seed;
    so.density = density;
    so.exec = exec;
    if (f.samples) so.samples = *f.samples;
    auto r = is_s_convex(scene.set, in_s, so);
    rep.add_sconvexity("sconvexity", r);
    rep.add_timing("sconvexity", sw.seconds());
    svg.segments = r.segments;
    svg.violating_pair = r.violation;
  }

  HarnessReport harness(RunReport& rep, SvgLayers& svg) const {
    Stopwatch sw;
    HarnessOptions ho;
    ho.check = check_options();
    ho.sconvex.seed = ho.up.seed = ho.open.seed = seed;
    ho.sconvex.density = density;
    ho.sconvex.exec = ho.up.exec = ho.open.exec = exec;
    auto h = equivalence_harness(scene.set, scene.radius, ho);
    rep.add_harness(h);
    rep.add_timing("harness", sw.seconds());
    svg.segments = h.r_convex.segments;
    svg.violating_pair = h.r_convex.violation ? h.r_convex.violation : h.sup_convex.violation;
    if (h.up.certificate) svg.violations.push_back(h.up.located[*h.up.certificate].x);
    if (h.condition.certificate) {
      svg.violations.push_back(h.condition.records[*h.condition.certificate].a);
    }
    return h;
  }
};

void write_file(std::string const& path, std::string const& body) {
  std::ofstream o(path);
  if (!o) throw std::runtime_error("cannot write " + path);
  o << body;
}

}  // namespace

int run_cli(std::vector<std::string> const& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Exterior sphere conditions, witness balls and S-convexity on CSG scenes",
               "exsphere"};
  app.fallthrough();
  app.require_subcommand(1);
  Flags f;
  app.add_option("--seed", f.seed, "Sampling seed (default: the scene's)");
  app.add_option("--samples", f.samples, "Boundary samples or probe count");
  app.add_option("--density", f.density, "Normal directions per point")->check(CLI::PositiveNumber);
  app.add_option("--rho-max", f.rho_max, "Largest certified sphere radius")
      ->check(CLI::PositiveNumber);
  app.add_option("--delta-list", f.delta_list, "Comma-separated deltas for infinite radii");
  app.add_option("--points", f.points, "Explicit points: \"(x,y);(x,y)\"");
  app.add_option("--svg", f.svg, "Write an SVG figure");
  app.add_option("--json-report", f.json_report, "Write the structured report");
  app.add_flag("--serial", f.serial, "Use the serial kernels");

  std::vector<std::pair<std::string, char const*>> subs = {
      {"check", "Extended exterior sphere condition at boundary samples"},
      {"cover", "Witness balls for complement points, verified"},
      {"sconvex", "S-convexity of A"},
      {"harness", "Condition, sup-hull convexity and r-hull criteria side by side"},
      {"report", "Condition, cover and harness in one document"}};
  for (auto const& [name, help] : subs) {
    auto* s = app.add_subcommand(name, help);
    s->add_option("scene", f.scene, "Scene file")->required();
    if (name == "sconvex") {
      s->add_option("--domain", f.domain, "S: space, abar (r-hull) or abar-sup")
          ->check(CLI::IsMember({"space", "abar", "abar-sup"}));
    }
  }

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (CLI::CallForHelp const&) {
    out << app.help();
    return kExitHolds;
  } catch (CLI::ParseError const& e) {
    err << "exsphere: " << e.what() << '\n';
    return kExitUsage;
  }
  std::string sub = app.get_subcommands().front()->get_name();

  std::optional<Run> run;
  try {
    run.emplace(load_scene(f.scene), f);
    // Flag values that parse lazily are validated here, before any work.
    (void)run->explicit_points();
    (void)run->deltas();
    for (double d : run->deltas()) {
      if (!(d > 0) || !std::isfinite(d)) throw DomainError("deltas must be positive");
    }
  } catch (std::exception const& e) {
    err << "exsphere: " << e.what() << '\n';
    return kExitUsage;
  }

  RunReport rep(sub, f.scene, run->seed);
  SvgLayers svg;
  bool failed = false;
  try {
    Stopwatch total;
    if (sub == "check" || sub == "report") run->check(rep, svg);
    if (sub == "cover" || sub == "report") run->cover(rep, svg);
    if (sub == "sconvex") run->sconvex(rep, svg);
    if (sub == "harness" || sub == "report") {
      auto h = run->harness(rep, svg);
      failed = h.i == Verdict::fails || h.ii == Verdict::fails || h.iii == Verdict::fails;
    }
    rep.add_timing("total", total.seconds());
  } catch (DomainError const& e) {
    err << "exsphere: " << e.what() << '\n';
    return kExitUsage;
  } catch (SceneError const& e) {
    err << "exsphere: " << e.what() << '\n';
    return kExitUsage;
  }
  failed = failed || rep.verdict() == Verdict::fails;

  out << rep.to_text();
  try {
    if (!f.json_report.empty()) write_file(f.json_report, rep.to_json());
    if (!f.svg.empty()) write_file(f.svg, render_svg(run->scene.set, svg));
  } catch (std::exception const& e) {
    err << "exsphere: " << e.what() << '\n';
    return kExitUsage;
  }
  return failed ? kExitViolation : kExitHolds;
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace exsphere
