// Copyright 2026 The exsphere Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Serial/OpenMP dispatch for index-parallel loops. Results are always
// written by index, so reductions done afterwards are order-stable and the
// serial path serves as the reference for the parallel one.

#pragma once

#include <cstddef>
#include <exception>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace exsphere {

enum class Exec { serial, parallel };

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

/// Call f(i) for i in [0, n). Exceptions thrown by f are captured per index
/// and the lowest-index one is rethrown after the loop.
template <class F>
void for_each_index(Exec exec, std::size_t n, F&& f) {
  if (exec == Exec::serial || n < 2) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::exception_ptr> errors(n);
  long const count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < count; ++i) {
    try {
      f(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto const& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

/// out[i] = f(i), evaluated with the requested execution policy.
template <class T, class F>
std::vector<T> map_indices(Exec exec, std::size_t n, F&& f) {
  std::vector<T> out(n);
  for_each_index(exec, n, [&](std::size_t i) { out[i] = f(i); });
  return out;
}

}  // namespace exsphere
