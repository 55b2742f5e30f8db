#pragma once

#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ortho::par {

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

inline constexpr std::size_t kLeaf = 256;

// Pairwise-tree sum with a tree shape fixed by the index range alone, so the
// floating-point result is bitwise identical no matter how work is scheduled.
inline double tree_sum(const double* v, std::size_t lo, std::size_t hi) {
  if (hi - lo <= kLeaf) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += v[i];
    return s;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  return tree_sum(v, lo, mid) + tree_sum(v, mid, hi);
}

inline double tree_sum(const std::vector<double>& v) { return tree_sum(v.data(), 0, v.size()); }

// Evaluate term(i) for i in [0, n) into a buffer (OpenMP across indices),
// then reduce with the deterministic tree.
template <class F>
double map_sum(std::size_t n, F&& term) {
  std::vector<double> buf(n);
#pragma omp parallel for schedule(dynamic, 16)
  for (long i = 0; i < long(n); ++i) buf[std::size_t(i)] = term(std::size_t(i));
  return tree_sum(buf);
}

// Serial reference for map_sum; identical result by construction.
template <class F>
double map_sum_serial(std::size_t n, F&& term) {
  std::vector<double> buf(n);
  for (std::size_t i = 0; i < n; ++i) buf[i] = term(i);
  return tree_sum(buf);
}

}  // namespace ortho::par
