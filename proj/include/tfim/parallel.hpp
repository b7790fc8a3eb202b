#pragma once

#include <cstddef>
#include <exception>
#include <vector>

namespace tfim {

/// Applies TFIM_RFS_THREADS (if set to a positive integer) as the OpenMP
/// thread cap. Returns the cap in effect.
int configure_threads_from_env();

int max_threads() noexcept;
void set_max_threads(int n) noexcept;

/// Runs body(i) for i in [0, n) across OpenMP threads. Exceptions thrown by
/// body are captured and the one with the lowest index is rethrown after
/// the loop.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace tfim
