#include "nilbary/parallel.hpp"

#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nilbary {

int thread_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_thread_count(int n) {
  if (n < 1) throw std::invalid_argument("thread count must be >= 1");
#ifdef _OPENMP
  omp_set_num_threads(n);
#endif
}

void add_into(std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("add_into: size mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
}

}  // namespace nilbary
