// Copyright 2026 The exsphere Authors.
// SPDX-License-Identifier: Apache-2.0

#include "exsphere/grid_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace exsphere {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

PointIndex::PointIndex(std::vector<Vec> points, Box const& box, double cell)
    : points_(std::move(points)), origin_(box.lo), cell_(cell), dim_(box.dim()) {
  if (!(cell > 0)) throw DomainError("PointIndex cell size must be positive");
  for (int i = 0; i < dim_; ++i) {
    double span = box.hi[i] - box.lo[i];
    counts_[static_cast<std::size_t>(i)] =
        std::max(1, static_cast<int>(std::ceil(span / cell_)));
  }
  std::size_t ncell = 1;
  for (int i = 0; i < dim_; ++i) {
    ncell *= static_cast<std::size_t>(counts_[static_cast<std::size_t>(i)]);
  }
  std::vector<std::uint32_t> bucket(points_.size());
  start_.assign(ncell + 1, 0);
  for (std::size_t k = 0; k < points_.size(); ++k) {
    auto f = static_cast<std::uint32_t>(flat(cell_of(points_[k])));
    bucket[k] = f;
    ++start_[f + 1];
  }
  for (std::size_t c = 0; c < ncell; ++c) start_[c + 1] += start_[c];
  order_.resize(points_.size());
  auto fill = start_;
  for (std::size_t k = 0; k < points_.size(); ++k) {
    order_[fill[bucket[k]]++] = static_cast<std::uint32_t>(k);
  }
}

std::array<int, 3> PointIndex::cell_of(Vec const& x) const {
  std::array<int, 3> c{0, 0, 0};
  for (int i = 0; i < dim_; ++i) {
    auto ui = static_cast<std::size_t>(i);
    int k = static_cast<int>(std::floor((x[i] - origin_[i]) / cell_));
    c[ui] = std::clamp(k, 0, counts_[ui] - 1);
  }
  return c;
}

std::size_t PointIndex::flat(std::array<int, 3> const& c) const {
  std::size_t f = 0;
  for (int i = dim_ - 1; i >= 0; --i) {
    auto ui = static_cast<std::size_t>(i);
    f = f * static_cast<std::size_t>(counts_[ui]) + static_cast<std::size_t>(c[ui]);
  }
  return f;
}

double PointIndex::nearest(Vec const& x, std::size_t* index) const {
  if (points_.empty()) return kInf;
  auto home = cell_of(x);
  // Offset between x and the (clamped) home cell bounds the ring search.
  Vec xc = x;
  for (int i = 0; i < dim_; ++i) {
    auto ui = static_cast<std::size_t>(i);
    double lo = origin_[i] + home[ui] * cell_;
    xc[i] = std::clamp(x[i], lo, lo + cell_);
  }
  double shift = distance(x, xc);
  int max_ring = *std::max_element(counts_.begin(), counts_.begin() + dim_);
  double best = kInf;
  std::size_t best_k = 0;
  for (int ring = 0; ring <= max_ring; ++ring) {
    if ((ring - 1) * cell_ - shift > best) break;
    int zlo = dim_ == 3 ? -ring : 0;
    int zhi = dim_ == 3 ? ring : 0;
    for (int dz = zlo; dz <= zhi; ++dz) {
      for (int dy = -ring; dy <= ring; ++dy) {
        for (int dx = -ring; dx <= ring; ++dx) {
          if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) != ring) {
            continue;
          }
          std::array<int, 3> c{home[0] + dx, home[1] + dy, home[2] + dz};
          bool ok = true;
          for (int i = 0; i < dim_; ++i) {
            auto ui = static_cast<std::size_t>(i);
            if (c[ui] < 0 || c[ui] >= counts_[ui]) ok = false;
          }
          if (!ok) continue;
          auto f = flat(c);
          for (auto j = start_[f]; j < start_[f + 1]; ++j) {
            double d = distance(x, points_[order_[j]]);
            if (d < best) {
              best = d;
              best_k = order_[j];
            }
          }
        }
      }
    }
  }
  if (index) *index = best_k;
  return best;
}

std::vector<std::size_t> PointIndex::within(Vec const& c, double radius) const {
  std::vector<std::size_t> out;
  if (points_.empty()) return out;
  Vec lo = c, hi = c;
  for (int i = 0; i < dim_; ++i) {
    lo[i] -= radius;
    hi[i] += radius;
  }
  auto a = cell_of(lo);
  auto b = cell_of(hi);
  for (int z = a[2]; z <= b[2]; ++z) {
    for (int y = a[1]; y <= b[1]; ++y) {
      for (int x = a[0]; x <= b[0]; ++x) {
        auto f = flat({x, y, z});
        for (auto j = start_[f]; j < start_[f + 1]; ++j) {
          if (distance(c, points_[order_[j]]) <= radius) out.push_back(order_[j]);
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

//---------------------------------------------------------------------------//
GridOracle::GridOracle(ClosedSetDesc const& set, double h, Exec exec)
    : h_(h > 0 ? h : set.grid_h()) {
  Box const& box = set.box();
  int dim = box.dim();
  std::array<std::size_t, 3> n{1, 1, 1};
  std::size_t total = 1;
  for (int i = 0; i < dim; ++i) {
    auto ui = static_cast<std::size_t>(i);
    n[ui] = static_cast<std::size_t>(std::floor((box.hi[i] - box.lo[i]) / h_)) + 1;
    total *= n[ui];
  }
  auto node = [&](std::size_t k) {
    Vec p = box.lo;
    for (int i = 0; i < dim; ++i) {
      auto ui = static_cast<std::size_t>(i);
      p[i] = box.lo[i] + static_cast<double>(k % n[ui]) * h_;
      k /= n[ui];
    }
    return p;
  };
  membership_ = map_indices<std::uint8_t>(exec, total, [&](std::size_t k) {
    return static_cast<std::uint8_t>(set.contains(node(k)));
  });

  std::vector<Vec> in, out;
  for (std::size_t k = 0; k < total; ++k) {
    (membership_[k] ? in : out).push_back(node(k));
  }
  for (auto const& s : set.boundary_lattice(h_ / 2)) in.push_back(s.point);
  // Point primitives may fall between grid nodes and off the box.
  for (auto const* leaf : set.leaves()) {
    if (auto const* f = std::get_if<FinitePointSet>(&leaf->shape)) {
      for (auto const& p : f->points) {
        if (set.contains(p)) in.push_back(p);
      }
    }
  }
  members_ = PointIndex(std::move(in), box, 4 * h_);
  outside_ = PointIndex(std::move(out), box, 4 * h_);
}

std::vector<Vec> GridOracle::points_near(Vec const& c, double radius) const {
  std::vector<Vec> out;
  for (auto i : members_.within(c, radius)) out.push_back(members_.points()[i]);
  return out;
}

}  // namespace exsphere
