#pragma once

// Deterministic parallel kernels. Reductions accumulate per fixed-size chunk
// and combine chunks in index order, so the result is bit-identical for any
// thread count, and identical to the serial reference (which uses the same
// chunking). HEMOPAP_THREADS caps the OpenMP thread count (0 or unset: auto).

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hemopap::par {

inline int thread_limit() {
  const char* s = std::getenv("HEMOPAP_THREADS");
  if (!s || !*s) return 0;
  char* end = nullptr;
  long v = std::strtol(s, &end, 10);
  if (end == s || v < 0) return 0;
  return static_cast<int>(v);
}

inline bool enabled() {
#ifdef _OPENMP
  return thread_limit() != 1;
#else
  return false;
#endif
}

#ifdef _OPENMP
inline int effective_threads() {
  int cap = thread_limit();
  int hw = omp_get_max_threads();
  return (cap > 0 && cap < hw) ? cap : hw;
}
#endif

inline constexpr std::int64_t kChunk = 8192;

template <class Term>
double chunked_sum(std::int64_t n, Term term, bool parallel) {
  if (n <= 0) return 0.0;
  const std::int64_t nchunks = (n + kChunk - 1) / kChunk;
  std::vector<double> partial(static_cast<std::size_t>(nchunks), 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(effective_threads()) \
    if (parallel && nchunks > 1)
#else
  (void)parallel;
#endif
  for (std::int64_t c = 0; c < nchunks; ++c) {
    const std::int64_t lo = c * kChunk;
    const std::int64_t hi = std::min(n, lo + kChunk);
    double s = 0.0;
    for (std::int64_t i = lo; i < hi; ++i) s += term(i);
    partial[static_cast<std::size_t>(c)] = s;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

struct MinMax {
  double mn, mx;
};

template <class Term>
MinMax chunked_minmax(std::int64_t n, Term term, bool parallel) {
  MinMax r{0.0, 0.0};
  if (n <= 0) return r;
  const std::int64_t nchunks = (n + kChunk - 1) / kChunk;
  std::vector<MinMax> partial(static_cast<std::size_t>(nchunks));
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(effective_threads()) \
    if (parallel && nchunks > 1)
#else
  (void)parallel;
#endif
  for (std::int64_t c = 0; c < nchunks; ++c) {
    const std::int64_t lo = c * kChunk;
    const std::int64_t hi = std::min(n, lo + kChunk);
    double v = term(lo);
    MinMax mm{v, v};
    for (std::int64_t i = lo + 1; i < hi; ++i) {
      v = term(i);
      if (v < mm.mn) mm.mn = v;
      if (v > mm.mx) mm.mx = v;
    }
    partial[static_cast<std::size_t>(c)] = mm;
  }
  r = partial[0];
  for (const MinMax& p : partial) {
    if (p.mn < r.mn) r.mn = p.mn;
    if (p.mx > r.mx) r.mx = p.mx;
  }
  return r;
}

// Independent per-index writes; no reduction, so parallel == serial exactly.
template <class Body>
void parallel_for(std::int64_t n, Body body, bool parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(effective_threads()) \
    if (parallel && n > 256)
#else
  (void)parallel;
#endif
  for (std::int64_t i = 0; i < n; ++i) body(i);
}

}  // namespace hemopap::par
