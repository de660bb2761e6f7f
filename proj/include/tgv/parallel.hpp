#pragma once

#include <cstddef>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#endif

// Row-parallel helpers. Reductions are accumulated per row and combined in
// row order, so results are bit-identical for any thread count.

namespace tgv {

// Grids below this pixel count are not worth a parallel region.
inline constexpr int kOmpMinPixels = 4096;

inline void set_thread_cap(int threads) {
#if defined(_OPENMP)
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

inline int max_threads() {
#if defined(_OPENMP)
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// Small grids skip the OpenMP runtime entirely; a parallel region with an
// inactive if-clause still pays team wakeup costs.
template <typename Fn>
inline void parallel_rows(int rows, int cols, Fn&& fn) {
  if (rows * cols >= kOmpMinPixels) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < rows; ++i) fn(i);
  } else {
    for (int i = 0; i < rows; ++i) fn(i);
  }
}

// Deterministic sum: fn(i) returns the serial sum of row i; partials are
// combined in row order so the total is thread-count independent.
template <typename Fn>
inline double deterministic_sum(int rows, int cols, Fn&& fn) {
  if (rows * cols < kOmpMinPixels) {
    double s = 0.0;
    for (int i = 0; i < rows; ++i) s += fn(i);
    return s;
  }
  std::vector<double> partial(static_cast<size_t>(rows), 0.0);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < rows; ++i) partial[static_cast<size_t>(i)] = fn(i);
  double s = 0.0;
  for (int i = 0; i < rows; ++i) s += partial[static_cast<size_t>(i)];
  return s;
}

}  // namespace tgv
