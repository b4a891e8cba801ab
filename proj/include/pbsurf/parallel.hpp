#pragma once

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pbsurf {

/// Worker count for OpenMP kernels: min(omp max threads, PBSURF_THREADS).
/// Results never depend on it: parallel loops only fill disjoint slots and
/// all reductions run serially in index order.
inline int worker_count() {
#ifdef _OPENMP
  int n = omp_get_max_threads();
#else
  int n = 1;
#endif
  if (const char* env = std::getenv("PBSURF_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1 && cap < n) n = cap;
  }
  return n;
}

}  // namespace pbsurf

#ifdef _OPENMP
#define PBSURF_PRAGMA(x) _Pragma(#x)
#define PBSURF_PARALLEL_FOR PBSURF_PRAGMA(omp parallel for schedule(static) num_threads(pbsurf::worker_count()))
#define PBSURF_PARALLEL_FOR_DYNAMIC PBSURF_PRAGMA(omp parallel for schedule(dynamic) num_threads(pbsurf::worker_count()))
#else
#define PBSURF_PARALLEL_FOR
#define PBSURF_PARALLEL_FOR_DYNAMIC
#endif
