#include "bilinv/parallel.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdlib>
#include <string>

namespace bilinv {

namespace {
int g_threads = 0;
}

void set_thread_count(int threads)
{
  g_threads = threads > 0 ? threads : 0;
  if (g_threads > 0)
    omp_set_num_threads(g_threads);
}

int thread_count()
{
  return g_threads > 0 ? g_threads : omp_get_max_threads();
}

int thread_count_from_env()
{
  const char* value = std::getenv(kThreadsEnvVar);
  if (value == nullptr)
    return 0;
  try {
    return std::max(0, std::stoi(value));
  } catch (...) {
    return 0;
  }
}

} // namespace bilinv
