#pragma once

#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "wireqfi/types.hpp"

namespace wireqfi {

// Index-parallel loop. Every output element is produced by exactly one
// iteration, so the result is bitwise identical for any thread count.
template <typename Fn>
void parallel_for(std::int64_t n, Exec exec, Fn&& fn) {
#ifdef _OPENMP
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
#endif
  (void)exec;
  for (std::int64_t i = 0; i < n; ++i) fn(i);
}

// Sum of fn(0..n-1) with a fixed combination order: partials are stored per
// index and accumulated serially, so serial and parallel runs agree bitwise.
template <typename Fn>
double deterministic_sum(std::int64_t n, Exec exec, Fn&& fn) {
  std::vector<double> part(static_cast<std::size_t>(n));
  parallel_for(n, exec, [&](std::int64_t i) { part[i] = fn(i); });
  double total = 0.0;
  for (std::int64_t i = 0; i < n; ++i) total += part[i];
  return total;
}

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline void set_threads(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

}  // namespace wireqfi
