#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

namespace bilinv {

/// Environment variable consulted by thread_count_from_env().
inline constexpr const char* kThreadsEnvVar = "BILINV_THREADS";

/// Sets the OpenMP team size used by the parallel kernels. Values < 1 restore the default.
void set_thread_count(int threads);
int thread_count();

/// Reads BILINV_THREADS; returns 0 when unset or unparsable.
int thread_count_from_env();

/// Runs body(i) for i in [0, count) on an OpenMP team. The first exception thrown
/// by any iteration is rethrown on the calling thread after the loop finishes.
template <typename Body>
void parallel_for(std::size_t count, Body&& body)
{
  std::exception_ptr failure;
  std::mutex guard;
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < count; ++i) {
    try {
      body(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(guard);
      if (!failure)
        failure = std::current_exception();
    }
  }
  if (failure)
    std::rethrow_exception(failure);
}

} // namespace bilinv
