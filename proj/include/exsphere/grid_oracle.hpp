// Copyright 2026 The exsphere Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Brute-force point-cloud stand-in for A used to cross-check the analytic
// queries. It only ever asks ClosedSetDesc for membership, never for
// distances or projections.

#pragma once

#include <cstdint>
#include <vector>

#include "exsphere/exec.hpp"
#include "exsphere/sets.hpp"

namespace exsphere {

/// Bucketed nearest-neighbour index over a fixed point list.
class PointIndex {
 public:
  PointIndex() = default;
  PointIndex(std::vector<Vec> points, Box const& box, double cell);

  bool empty() const { return points_.empty(); }
  std::size_t size() const { return points_.size(); }
  std::vector<Vec> const& points() const { return points_; }

  // Distance to the nearest stored point, +inf when empty.
  double nearest(Vec const& x, std::size_t* index = nullptr) const;
  std::vector<std::size_t> within(Vec const& c, double radius) const;

 private:
  std::vector<Vec> points_;
  Vec origin_;
  double cell_ = 1;
  int dim_ = 2;
  std::array<int, 3> counts_{1, 1, 1};
  std::vector<std::uint32_t> start_;  // CSR offsets, one per cell + 1
  std::vector<std::uint32_t> order_;

  std::array<int, 3> cell_of(Vec const& x) const;
  std::size_t flat(std::array<int, 3> const& c) const;
};

class GridOracle {
 public:
  // h <= 0 selects the scene default grid_h().
  explicit GridOracle(ClosedSetDesc const& set, double h = 0,
                      Exec exec = Exec::parallel);

  double h() const { return h_; }
  std::vector<Vec> const& points() const { return members_.points(); }
  std::size_t node_count() const { return membership_.size(); }
  bool node_member(std::size_t i) const { return membership_[i] != 0; }

  // Nearest oracle point of A (grid members plus boundary lattice).
  double distance(Vec const& x) const { return members_.nearest(x); }
  // Nearest grid node outside A.
  double complement_distance(Vec const& x) const {
    return outside_.nearest(x);
  }
  std::vector<Vec> points_near(Vec const& c, double radius) const;

 private:
  double h_;
  std::vector<std::uint8_t> membership_;
  PointIndex members_;
  PointIndex outside_;
};

}  // namespace exsphere
