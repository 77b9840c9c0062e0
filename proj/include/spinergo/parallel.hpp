#pragma once

#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace spinergo::par {

enum class Mode { serial, openmp };

// Parallel loop over [0, n). Iterations must be independent; deterministic
// results require writing into pre-allocated per-index slots (reduce serially
// afterwards). The serial mode is the reference path used by tests and the
// benchmark.
template <typename F>
void for_index(std::int64_t n, F&& body, Mode mode = Mode::openmp) {
#ifdef _OPENMP
  if (mode == Mode::openmp) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) body(i);
    return;
  }
#else
  (void)mode;
#endif
  for (std::int64_t i = 0; i < n; ++i) body(i);
}

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace spinergo::par
