// Copyright 2026 The exsphere Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Run reports (structured JSON with a text rendering of the same fields)
// and SVG figures.

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "exsphere/ballcover.hpp"
#include "exsphere/conditions.hpp"
#include "exsphere/sconvexity.hpp"

namespace exsphere {

/*!
 * Accumulates the results of one CLI run.
 *
 * Every section is stored as structured data. The text form prints the same
 * fields in the same order, and the digest hashes everything but timings,
 * so two runs with the same scene and seed share a digest.
 */
class RunReport {
 public:
  RunReport(std::string subcommand, std::string scene, std::uint64_t seed);
  ~RunReport();
  RunReport(RunReport&&) noexcept;
  RunReport& operator=(RunReport&&) noexcept;

  void add_condition(std::string const& key, ConditionReport const& rep);
  void add_cover(std::string const& key, std::vector<CoverAttempt> const& attempts,
                 CoverReport const& verified);
  void add_sconvexity(std::string const& key, SConvexityReport const& rep);
  void add_up(std::string const& key, UpReport const& rep);
  void add_open(std::string const& key, OpenReport const& rep);
  void add_harness(HarnessReport const& rep);
  void add_timing(std::string const& key, double seconds);

  // Worst verdict over all sections.
  Verdict verdict() const;
  // FNV-1a 64 of the JSON without timings, as 16 hex digits.
  std::string digest() const;
  std::string to_json() const;
  std::string to_text() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  void note_verdict(Verdict v);
};

std::uint64_t fnv1a64(std::string const& bytes);

/// Overlay content. Palette: A gray, violations red, witness balls green,
/// normal segments blue.
struct SvgLayers {
  std::vector<Ball> witnesses;
  std::vector<Vec> witness_points;  // the x each ball covers
  std::vector<NormalSegment> segments;
  std::vector<Vec> violations;
  std::optional<SegmentViolation> violating_pair;
};

inline constexpr char const* kColorSet = "#9e9e9e";
inline constexpr char const* kColorViolation = "#d62728";
inline constexpr char const* kColorWitness = "#2ca02c";
inline constexpr char const* kColorSegment = "#1f77b4";

/// SVG 1.1 document with the scene box as viewBox (y up). 3D scenes are
/// drawn as their projection onto the xy plane.
std::string render_svg(ClosedSetDesc const& set, SvgLayers const& layers);

}  // namespace exsphere
