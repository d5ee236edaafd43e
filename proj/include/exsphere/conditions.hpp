// Copyright 2026 The exsphere Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Checkers for the extended exterior r(.)-sphere condition, the radius
// function rho(x) = min{r(a)/2 : a in proj_A(x)}, its lower semicontinuity,
// and union-of-balls covers of the complement.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "exsphere/exec.hpp"
#include "exsphere/proximal.hpp"
#include "exsphere/radius_field.hpp"
#include "exsphere/sets.hpp"
#include "exsphere/witness.hpp"

namespace exsphere {

enum class Verdict { holds, fails, marginal, vacuous };

char const* to_string(Verdict v);
// Worst of two verdicts: fails > marginal > holds > vacuous.
Verdict combine(Verdict a, Verdict b);

enum class SampleClass { bdry_int, not_bdry_int, unclassified };
char const* to_string(SampleClass c);

struct SampleRecord {
  Vec a;
  std::string label;
  SampleClass cls = SampleClass::unclassified;
  std::vector<ProxNormal> normals;
  ExtReal required;  // r(a)
  Verdict verdict = Verdict::holds;
  // The normal that decides the verdict: best under EXISTS, worst under
  // FORALL.
  std::optional<std::size_t> deciding;
  std::string note;
};

struct ConditionReport {
  Verdict verdict = Verdict::holds;
  std::vector<SampleRecord> records;
  int unclassified = 0;
  int density = 0;
  std::uint64_t seed = 0;
  // First failing record, if any.
  std::optional<std::size_t> certificate;
};

struct CheckOptions {
  int samples = 200;
  std::uint64_t seed = 1;
  int density = 0;     // <= 0: default for the dimension
  double rho_max = 0;  // <= 0: default for the scene
  Exec exec = Exec::parallel;
  // Replaces the bdry(int A) classification when set; used to exercise the
  // quantifier logic directly.
  std::function<SampleClass(Vec const&)> classify;
};

/// Compare a realization radius against r(a): holds, marginal within
/// ball_tol below, fails otherwise.
Verdict compare_radius(ClosedSetDesc const& set, ExtReal realization,
                       ExtReal required);

/// Check at explicit boundary points.
ConditionReport check_extended_condition(ClosedSetDesc const& set,
                                         RadiusField const& r,
                                         std::vector<Vec> const& points,
                                         CheckOptions const& opts);
/// Check at opts.samples seeded boundary samples.
ConditionReport check_extended_condition(ClosedSetDesc const& set,
                                         RadiusField const& r,
                                         CheckOptions const& opts);

/// The same check on cl(int A); `vacuous` when int A is empty.
ConditionReport check_exterior_condition_on_closure(ClosedSetDesc const& set,
                                                    RadiusField const& r,
                                                    CheckOptions const& opts);

struct RhoValue {
  ExtReal rho;
  Vec a_x;          // lexicographically smallest attaining projection
  double dist = 0;  // d_A(x)
  ProjectionResult proj;
};

RhoValue radius_function(ClosedSetDesc const& set, RadiusField const& r,
                         Vec const& x);
ExtReal radius_function_rho(ClosedSetDesc const& set, RadiusField const& r,
                            Vec const& x);

struct LscProbe {
  Vec xbar;
  Vec v;  // x_k = xbar + v / 2^k
};

struct LscRecord {
  Vec xbar;
  Vec v;
  ExtReal rho_bar;
  ExtReal liminf;
  ExtReal limsup;
  bool lsc = true;
  bool discontinuous = false;
};

struct LscReport {
  bool lsc = true;
  int discontinuities = 0;
  std::vector<LscRecord> records;
};

struct LscOptions {
  int terms = 1000;        // cap on the number of x_k
  int random_probes = 0;   // extra probes with random xbar and v
  std::uint64_t seed = 1;
  Exec exec = Exec::parallel;
};

LscReport lsc_audit(ClosedSetDesc const& set, RadiusField const& r,
                    std::vector<LscProbe> const& probes,
                    LscOptions const& opts = {});

struct CoverRecord {
  Vec x;
  bool ok = true;
  std::optional<WitnessBall> witness;
  std::string diagnostics;
};

struct CoverReport {
  Verdict verdict = Verdict::holds;
  int violations = 0;
  std::vector<CoverRecord> records;
};

using RhoFn = std::function<ExtReal(Vec const&)>;
using WitnessFn = std::function<WitnessBall(Vec const&)>;

/// For every x: finite rho(x) needs |x - y| <= rho(x) and d_A(y) >= rho(x);
/// infinite rho(x) needs B(x + delta u; delta) to miss A for every delta.
CoverReport verify_union_of_balls(ClosedSetDesc const& set, RhoFn const& rho,
                                  WitnessFn const& witness,
                                  std::vector<Vec> const& points,
                                  std::vector<double> const& deltas,
                                  Exec exec = Exec::parallel);

/// Boundary points where differently labeled components touch and the
/// radius rules disagree.
std::vector<Vec> touching_conflicts(ClosedSetDesc const& set,
                                    RadiusField const& r);

/// Uniform points of the box outside A.
std::vector<Vec> sample_complement(ClosedSetDesc const& set, int count,
                                   std::uint64_t seed);

}  // namespace exsphere
