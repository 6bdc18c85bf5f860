#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

namespace wvu::detail {

/// Runs body(k) for k in [0, n) across OpenMP threads. Each index is
/// handled exactly once; the first exception thrown is rethrown after the
/// loop.
template <typename Body>
void parallel_for(std::size_t n, Body&& body) {
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    try {
      body(static_cast<std::size_t>(k));
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace wvu::detail
