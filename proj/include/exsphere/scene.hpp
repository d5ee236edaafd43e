// Copyright 2026 The exsphere Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Scene files: a closed set, its radius rules and the sampling setup.
// See docs/scene_grammar.md for the grammar.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "exsphere/radius_field.hpp"
#include "exsphere/sets.hpp"

namespace exsphere {

/// Parse or validation failure, with a 1-based position when known.
class SceneError : public std::runtime_error {
 public:
  SceneError(std::string const& source, int line, int column,
             std::string const& msg);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

struct SampleSpec {
  std::uint64_t seed = 1;
  int boundary = 200;  // boundary samples for condition checks
  int density = 0;     // <= 0: default for the dimension
  int probes = 1000;   // complement points for cover runs
  std::vector<Vec> points;
  std::vector<double> deltas{0.5, 1, 2};
};

struct Scene {
  std::string name;
  ClosedSetDesc set;
  RadiusField radius;
  SampleSpec samples;
};

/// Parse scene text. `name` appears in error messages.
Scene parse_scene(std::string const& text, std::string const& name = "<scene>");
Scene load_scene(std::string const& path);

/// Parse "(x,y)" or "(x,y);(x,y);..." in the scene's number syntax.
std::vector<Vec> parse_point_list(std::string const& text);
/// Parse "0.5, 1, 2".
std::vector<double> parse_number_list(std::string const& text);

}  // namespace exsphere
