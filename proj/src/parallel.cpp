#include "tfim/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tfim {

int max_threads() noexcept {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_max_threads(int n) noexcept {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

int configure_threads_from_env() {
  if (const char* env = std::getenv("TFIM_RFS_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) set_max_threads(n);
    } catch (const std::exception&) {
      // Unparsable value: keep the OpenMP default.
    }
  }
  return max_threads();
}

}  // namespace tfim
