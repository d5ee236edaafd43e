// Copyright 2026 The exsphere Authors.
// SPDX-License-Identifier: Apache-2.0

#include <filesystem>
#include <string>

#include "doctest.h"
#include "exsphere/scene.hpp"

using namespace exsphere;

namespace {

std::string const kHeader =
    "dimension = 2\n"
    "box = (-3,-3) (3,3)\n";

// Parse and return the error, failing the test if none is raised.
SceneError error_of(std::string const& text) {
  try {
    parse_scene(text, "t.scene");
  } catch (SceneError const& e) {
    return e;
  }
  FAIL("expected a scene error");
  return SceneError("", 0, 0, "");
}

}  // namespace

TEST_SUITE("scene") {
  TEST_CASE("every shipped scene loads") {
    int n = 0;
    for (auto const& e : std::filesystem::directory_iterator(EXSPHERE_SCENE_DIR)) {
      if (e.path().extension() != ".scene") continue;
      CAPTURE(e.path().string());
      CHECK_NOTHROW(load_scene(e.path().string()));
      ++n;
    }
    CHECK(n >= 8);
  }

  TEST_CASE("strip scene contents") {
    auto sc = load_scene(std::string(EXSPHERE_SCENE_DIR) + "/strip.scene");
    CHECK(sc.set.dim() == 2);
    CHECK(sc.set.contains(Vec(0, 2)));
    CHECK_FALSE(sc.set.contains(Vec(0, 1)));
    CHECK(sc.radius.value(sc.set, Vec(1, 0)) == ExtReal::finite(0.5));
    CHECK(sc.radius.value(sc.set, Vec(1, 2)) == ExtReal::finite(1));
    CHECK(sc.samples.density == 720);
    CHECK(sc.samples.boundary == 200);
    REQUIRE(sc.samples.points.size() == 3);
    CHECK(sc.samples.points[1] == Vec(0, 1.75));
    CHECK(sc.samples.deltas == std::vector<double>{0.5, 1, 2});
  }

  TEST_CASE("nested sets and labels") {
    auto sc = load_scene(std::string(EXSPHERE_SCENE_DIR) + "/quadrant_point.scene");
    CHECK(sc.set.contains(Vec(-1, -1)));
    CHECK(sc.set.contains(Vec(2, 0)));
    CHECK(sc.set.boundary_label(Vec(2, 0)) == "spot");
    CHECK(sc.set.boundary_label(Vec(0, -1)) == "quadrant");
  }

  TEST_CASE("literals parse to the nearest double") {
    auto sc = parse_scene(kHeader +
                          "[set]\n"
                          "ball label=b center=(0.1,0.2) radius=0.3\n"
                          "[radius]\n"
                          "b = 0.7\n");
    CHECK(sc.set.contains(Vec(0.1, 0.5)));
    CHECK(sc.radius.value(sc.set, Vec(0.1, 0.5)) == ExtReal::finite(0.7));
    CHECK(parse_point_list("(0.1, 2.675); (1e-3,-4)") ==
          std::vector<Vec>{Vec(0.1, 2.675), Vec(1e-3, -4)});
    CHECK(parse_number_list("0.5, 1, 2") == std::vector<double>{0.5, 1, 2});
  }

  TEST_CASE("radius rules: infinity, expressions, fallback") {
    auto sc = parse_scene(kHeader +
                          "[set]\n"
                          "union\n"
                          "  halfspace label=a normal=(0,1) offset=-1\n"
                          "  halfspace label=b normal=(0,-1) offset=-1\n"
                          "  ball center=(2,0) radius=0.5\n"
                          "end\n"
                          "[radius]\n"
                          "a = inf\n"
                          "b = 1 + 0.1 * abs(x) ; lipschitz = 0.1\n"
                          "* = 2\n");
    CHECK(sc.radius.value(sc.set, Vec(0, -1)).is_infinite());
    CHECK(sc.radius.value(sc.set, Vec(2, 1)).value() == doctest::Approx(1.2));
    CHECK(sc.radius.value(sc.set, Vec(2.5, 0)) == ExtReal::finite(2));
  }

  TEST_CASE("errors name the line and column") {
    auto e = error_of(kHeader + "[set]\n  cone label=x\n[radius]\nx = 1\n");
    CHECK(e.line() == 4);
    CHECK(e.column() == 3);
    CHECK(std::string(e.what()).find("t.scene:4:3") == 0);

    auto bad_num = error_of(kHeader + "[set]\nball center=(0,1..5) radius=1\n");
    CHECK(bad_num.line() == 4);
    CHECK(bad_num.column() == 16);

    auto missing = error_of(kHeader + "[set]\nball center=(0,0)\n[radius]\n* = 1\n");
    CHECK(missing.line() == 4);
    CHECK(std::string(missing.what()).find("radius") != std::string::npos);

    auto open = error_of(kHeader + "[set]\nunion\n  ball center=(0,0) radius=1\n");
    CHECK(open.line() == 4);
    CHECK(std::string(open.what()).find("end") != std::string::npos);

    auto header = error_of("box = (0,0) (1,1)\n");
    CHECK(header.line() == 1);

    auto dims = error_of(kHeader + "[set]\nball center=(0,0,0) radius=1\n");
    CHECK(dims.line() == 4);

    auto section = error_of(kHeader + "[stuff]\n");
    CHECK(section.line() == 3);
    CHECK(section.column() == 2);
  }

  TEST_CASE("radius rules are validated against the set") {
    std::string set = kHeader +
                      "[set]\n"
                      "union\n"
                      "  ball label=l center=(-1,0) radius=1\n"
                      "  ball label=r center=(1.5,0) radius=0.5\n"
                      "end\n";
    auto unknown = error_of(set + "[radius]\nl = 1\nr = 1\nq = 2\n");
    CHECK(unknown.line() == 11);
    CHECK(std::string(unknown.what()).find("'q'") != std::string::npos);

    auto uncovered = error_of(set + "[radius]\nl = 1\n");
    CHECK(std::string(uncovered.what()).find("r") != std::string::npos);

    auto no_bound = error_of(set + "[radius]\nl = 1 + x\nr = 1\n");
    CHECK(no_bound.line() == 9);

    auto nonpositive = error_of(set + "[radius]\nl = 0\nr = 1\n");
    CHECK(nonpositive.line() == 9);

    // Touching components with different radii are refused.
    auto touching = error_of(kHeader +
                             "[set]\n"
                             "union\n"
                             "  ball label=l center=(-1,0) radius=1\n"
                             "  ball label=r center=(1,0) radius=1\n"
                             "end\n"
                             "[radius]\nl = 1\nr = 0.5\n");
    CHECK(std::string(touching.what()).find("touch") != std::string::npos);
    CHECK_NOTHROW(parse_scene(kHeader +
                              "[set]\n"
                              "union\n"
                              "  ball label=l center=(-1,0) radius=1\n"
                              "  ball label=r center=(1,0) radius=1\n"
                              "end\n"
                              "[radius]\nl = 1\nr = 1\n"));

    auto lying = error_of(set + "[radius]\nl = 2 + sin(40 * y) ; lipschitz = 1\nr = 1\n");
    CHECK(std::string(lying.what()).find("ipschitz") != std::string::npos);
  }

  TEST_CASE("set errors surface at the set section") {
    auto empty = error_of(kHeader +
                          "[set]\n"
                          "intersection\n"
                          "  halfspace normal=(0,1) offset=0\n"
                          "  halfspace normal=(0,-1) offset=-1\n"
                          "end\n"
                          "[radius]\n* = 1\n");
    CHECK(empty.line() == 3);
    auto outside = error_of(kHeader +
                            "[set]\nball center=(0,0) radius=1\n[radius]\n* = 1\n"
                            "[samples]\npoints = (0,5)\n");
    CHECK(outside.line() == 8);
    CHECK_THROWS_AS(load_scene("/nonexistent/x.scene"), SceneError);
  }
}
