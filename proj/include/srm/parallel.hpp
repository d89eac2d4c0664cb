#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>

#include <omp.h>

namespace srm {

/// Execution policy for the data-parallel kernels. `serial` is the reference
/// path kept for testing and benchmarking; both produce bit-identical output
/// because every item writes only its own slot and reductions happen
/// afterwards in a fixed order. An exception thrown by any item is rethrown
/// on the calling thread after the loop.
enum class Exec { serial, parallel };

template <class F>
void for_each_index(Exec exec, std::size_t n, F&& body) {
  if (exec == Exec::serial) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  const auto count = static_cast<std::int64_t>(n);
  std::exception_ptr failure;
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(srm_for_each_index)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

inline void set_thread_count(int n) {
  if (n > 0) omp_set_num_threads(n);
}

inline int thread_count() { return omp_get_max_threads(); }

}  // namespace srm
