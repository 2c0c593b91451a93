#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

// Deterministic data-parallel reductions. Work is split into fixed-size
// blocks (independent of the thread count); each block is accumulated
// serially in index order and the block partials are combined with a fixed
// fan-in-2 tree. Results are bit-identical for any number of threads.
//
// Serial twins (scan::serial::*) run the same block decomposition on one
// thread; tests assert bitwise equality against the parallel kernels.
namespace hmfa::scan {

inline constexpr std::int64_t kBlock = 1 << 15;

// splitmix64: counter-based generator, one value per (seed, index).
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t mix(std::uint64_t seed, std::uint64_t idx) {
  return splitmix64(seed ^ splitmix64(idx * 0xd1342543de82ef95ull + 0x2545f4914f6cdd1dull));
}

// Uniform double in [0,1), deterministic in (seed, idx).
inline double u01(std::uint64_t seed, std::uint64_t idx) {
  return static_cast<double>(mix(seed, idx) >> 11) * 0x1.0p-53;
}

// Uniform double in [lo,hi).
inline double uab(std::uint64_t seed, std::uint64_t idx, double lo, double hi) {
  return lo + (hi - lo) * u01(seed, idx);
}

inline double pairwise_fold(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::size_t n = v.size();
  while (n > 1) {
    std::size_t m = 0;
    for (std::size_t i = 0; i + 1 < n; i += 2) v[m++] = v[i] + v[i + 1];
    if (n & 1) v[m++] = v[n - 1];
    n = m;
  }
  return v[0];
}

template <class F>
double blocked_sum(std::int64_t n, F&& f) {
  if (n <= 0) return 0.0;
  const std::int64_t nb = (n + kBlock - 1) / kBlock;
  std::vector<double> partial(static_cast<std::size_t>(nb), 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::int64_t b = 0; b < nb; ++b) {
    const std::int64_t lo = b * kBlock;
    const std::int64_t hi = std::min(n, lo + kBlock);
    double s = 0.0;
    for (std::int64_t i = lo; i < hi; ++i) s += f(i);
    partial[static_cast<std::size_t>(b)] = s;
  }
  return pairwise_fold(std::move(partial));
}

template <class F>
std::int64_t count_if(std::int64_t n, F&& pred) {
  if (n <= 0) return 0;
  const std::int64_t nb = (n + kBlock - 1) / kBlock;
  std::int64_t total = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : total)
#endif
  for (std::int64_t b = 0; b < nb; ++b) {
    const std::int64_t lo = b * kBlock;
    const std::int64_t hi = std::min(n, lo + kBlock);
    std::int64_t c = 0;
    for (std::int64_t i = lo; i < hi; ++i)
      if (pred(i)) ++c;
    total += c;
  }
  return total;
}

template <class F>
double min_reduce(std::int64_t n, F&& f) {
  const std::int64_t nb = (n + kBlock - 1) / kBlock;
  std::vector<double> partial(static_cast<std::size_t>(nb), std::numeric_limits<double>::infinity());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::int64_t b = 0; b < nb; ++b) {
    const std::int64_t lo = b * kBlock;
    const std::int64_t hi = std::min(n, lo + kBlock);
    double m = std::numeric_limits<double>::infinity();
    for (std::int64_t i = lo; i < hi; ++i) m = std::min(m, f(i));
    partial[static_cast<std::size_t>(b)] = m;
  }
  double m = std::numeric_limits<double>::infinity();
  for (double v : partial) m = std::min(m, v);
  return m;
}

template <class F>
double max_reduce(std::int64_t n, F&& f) {
  return -min_reduce(n, [&](std::int64_t i) { return -f(i); });
}

namespace serial {

template <class F>
double blocked_sum(std::int64_t n, F&& f) {
  if (n <= 0) return 0.0;
  const std::int64_t nb = (n + kBlock - 1) / kBlock;
  std::vector<double> partial(static_cast<std::size_t>(nb), 0.0);
  for (std::int64_t b = 0; b < nb; ++b) {
    const std::int64_t lo = b * kBlock;
    const std::int64_t hi = std::min(n, lo + kBlock);
    double s = 0.0;
    for (std::int64_t i = lo; i < hi; ++i) s += f(i);
    partial[static_cast<std::size_t>(b)] = s;
  }
  return pairwise_fold(std::move(partial));
}

template <class F>
std::int64_t count_if(std::int64_t n, F&& pred) {
  std::int64_t total = 0;
  for (std::int64_t i = 0; i < n; ++i)
    if (pred(i)) ++total;
  return total;
}

template <class F>
double min_reduce(std::int64_t n, F&& f) {
  double m = std::numeric_limits<double>::infinity();
  for (std::int64_t i = 0; i < n; ++i) m = std::min(m, f(i));
  return m;
}

}  // namespace serial

inline int thread_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline void set_thread_count(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

}  // namespace hmfa::scan
