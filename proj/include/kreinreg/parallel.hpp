#pragma once

#include <cstddef>
#include <exception>
#include <mutex>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace kreinreg::par {

enum class Mode { serial, openmp };

// The serial path is the reference implementation; the OpenMP path must
// produce bit-identical results because every iteration writes only its own
// slot and performs no cross-iteration reductions.
inline Mode default_mode() {
#ifdef _OPENMP
  return Mode::openmp;
#else
  return Mode::serial;
#endif
}

// Runs f(i) for i in [0, n). Exceptions thrown by iterations are captured
// and the first one is rethrown after the loop joins.
template <class F>
void for_index(std::size_t n, F&& f, Mode mode = default_mode()) {
  if (mode == Mode::serial) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
#ifdef _OPENMP
  std::exception_ptr first_error;
  std::mutex error_mutex;
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    try {
      f(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!first_error) first_error = std::current_exception();
    }
  }
  if (first_error) std::rethrow_exception(first_error);
#else
  for (std::size_t i = 0; i < n; ++i) f(i);
#endif
}

}  // namespace kreinreg::par
