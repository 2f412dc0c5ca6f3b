#include "adpt/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace adpt {

int effective_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("ADPT_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void serial_for(std::int64_t n, const std::function<void(std::int64_t)>& body) {
  for (std::int64_t i = 0; i < n; ++i) body(i);
}

void parallel_for(std::int64_t n, int threads, const std::function<void(std::int64_t)>& body) {
  threads = effective_threads(threads);
  if (threads <= 1 || n < 2) {
    serial_for(n, body);
    return;
  }
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::int64_t i = 0; i < n; ++i) body(i);
#else
  serial_for(n, body);
#endif
}

}  // namespace adpt
