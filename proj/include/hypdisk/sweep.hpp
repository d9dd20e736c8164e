#pragma once

// Data-parallel extremum sweeps over sample sets. Every kernel has a serial reference path; the
// OpenMP path must return bit-identical results (value and witness index) for any thread count.

#include <cmath>
#include <cstddef>
#include <exception>
#include <limits>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hypdisk {

enum class Execution { serial, parallel };

struct Extremum {
  double value = std::numeric_limits<double>::infinity();
  std::size_t index = 0;
};

namespace detail {

// Lower value wins; ties go to the smaller index. NaN ranks below everything so a failed
// evaluation can never hide behind a finite margin.
inline bool better(double v, std::size_t i, const Extremum& cur) {
  if (std::isnan(v)) return !std::isnan(cur.value) || i < cur.index;
  if (std::isnan(cur.value)) return false;
  return v < cur.value || (v == cur.value && i < cur.index);
}

template <class Fn>
double guarded(Fn& fn, std::size_t i) {
  try {
    return fn(i);
  } catch (...) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

}  // namespace detail

/// Minimum of fn(i) over i in [0, n) with the index achieving it.
template <class Fn>
Extremum min_over(std::size_t n, Fn&& fn, Execution exec = Execution::parallel) {
  Extremum best;
  best.index = n;
  if (exec == Execution::serial || n < 64) {
    for (std::size_t i = 0; i < n; ++i) {
      const double v = detail::guarded(fn, i);
      if (detail::better(v, i, best)) best = {v, i};
    }
    return best;
  }
#pragma omp parallel
  {
    Extremum local;
    local.index = n;
#pragma omp for schedule(static) nowait
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(n); ++k) {
      const auto i = static_cast<std::size_t>(k);
      const double v = detail::guarded(fn, i);
      if (detail::better(v, i, local)) local = {v, i};
    }
#pragma omp critical(hypdisk_min_over)
    {
      if (local.index < n && detail::better(local.value, local.index, best)) best = local;
    }
  }
  return best;
}

/// Maximum of fn(i); NaN evaluations win so they surface as the witness.
template <class Fn>
Extremum max_over(std::size_t n, Fn&& fn, Execution exec = Execution::parallel) {
  Extremum e = min_over(
      n, [&fn](std::size_t i) { return -fn(i); }, exec);
  e.value = -e.value;
  return e;
}

/// out[i] = fn(i), evaluated in parallel when requested. The first exception (lowest index) is
/// rethrown after the sweep.
template <class T, class Fn>
std::vector<T> tabulate(std::size_t n, Fn&& fn, Execution exec = Execution::parallel) {
  std::vector<T> out(n);
  if (exec == Execution::serial || n < 64) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::exception_ptr error;
  std::size_t error_index = n;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(n); ++k) {
    try {
      out[k] = fn(static_cast<std::size_t>(k));
    } catch (...) {
#pragma omp critical(hypdisk_tabulate)
      {
        if (static_cast<std::size_t>(k) < error_index) {
          error_index = static_cast<std::size_t>(k);
          error = std::current_exception();
        }
      }
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace hypdisk
