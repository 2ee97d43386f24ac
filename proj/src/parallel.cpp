#include "eigenform/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <exception>
#include <string>

namespace eigenform {

int configured_threads() {
  const char* env = std::getenv("EIGENFORM_LAB_THREADS");
  if (env != nullptr) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != env && value > 0) return static_cast<int>(value);
  }
  return omp_get_max_threads();
}

void parallel_for(int n, const std::function<void(int)>& body) {
  std::exception_ptr error;
  const int threads = configured_threads();
#pragma omp parallel for num_threads(threads) schedule(dynamic)
  for (int i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
#pragma omp critical(eigenform_parallel_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace eigenform
