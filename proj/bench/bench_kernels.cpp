// Copyright 2026 The exsphere Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Serial reference against the OpenMP kernels. Arg 0 runs serial, 1 parallel.

#include <benchmark/benchmark.h>

#include "exsphere/ballcover.hpp"
#include "exsphere/grid_oracle.hpp"
#include "exsphere/sconvexity.hpp"
#include "fixtures.hpp"

using namespace exsphere;
using namespace exsphere::testing;

namespace {

Exec mode(benchmark::State const& st) { return st.range(0) ? Exec::parallel : Exec::serial; }

void BM_GridOracle(benchmark::State& st) {
  auto s = lineplane();
  for (auto _ : st) {
    GridOracle g(s, 0, mode(st));
    benchmark::DoNotOptimize(g.node_count());
  }
}

void BM_ConditionCheck(benchmark::State& st) {
  auto s = quadrant_point();
  auto r = uniform(0.9);
  CheckOptions o;
  o.samples = 100;
  o.exec = mode(st);
  for (auto _ : st) benchmark::DoNotOptimize(check_extended_condition(s, r, o).verdict);
}

void BM_BallCover(benchmark::State& st) {
  auto s = strip();
  auto r = strip_radius();
  auto pts = sample_complement(s, 1000, 1);
  for (auto _ : st) benchmark::DoNotOptimize(build_cover(s, r, pts, {}, {}, mode(st)).size());
}

void BM_SConvexity(benchmark::State& st) {
  auto s = lineplane();
  auto r = lineplane_radius();
  HullContext ctx(s, r);
  Membership sup = [&](Vec const& x) { return ctx.in_hull_sup(x); };
  SConvexOptions o;
  o.samples = 80;
  o.exec = mode(st);
  for (auto _ : st) benchmark::DoNotOptimize(is_s_convex(s, sup, o).verdict);
}

}  // namespace

BENCHMARK(BM_GridOracle)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConditionCheck)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BallCover)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SConvexity)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
