#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace nilbary {

enum class Execution { Serial, Parallel };

/// Number of OpenMP threads the parallel kernels will use.
int thread_count();
/// Overrides the thread count for subsequent parallel regions.
void set_thread_count(int n);

/// Sum of term(0) + ... + term(n-1).
///
/// Parallel: every term is evaluated concurrently, then combined by a
/// pairwise tree whose shape depends only on n, so the result is bitwise
/// identical for any thread count.
/// Serial: the reference left-to-right sum.
template <class T, class Term, class Combine>
T reduce_samples(std::size_t n, Term&& term, Combine&& combine, Execution exec) {
  if (n == 0) return T{};
  if (exec == Execution::Serial) {
    T acc = term(0);
    for (std::size_t i = 1; i < n; ++i) combine(acc, term(i));
    return acc;
  }
  std::vector<T> parts(n);
  const long long total = static_cast<long long>(n);
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < total; ++i) parts[static_cast<std::size_t>(i)] = term(static_cast<std::size_t>(i));
  for (std::size_t stride = 1; stride < n; stride *= 2) {
    for (std::size_t i = 0; i + stride < n; i += 2 * stride) combine(parts[i], parts[i + stride]);
  }
  return std::move(parts[0]);
}

/// Elementwise a += b for equally sized vectors.
void add_into(std::vector<double>& a, const std::vector<double>& b);

}  // namespace nilbary
