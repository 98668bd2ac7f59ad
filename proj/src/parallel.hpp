#pragma once

#include <cstddef>
#include <exception>
#include <vector>

#include "terabridge/explore.hpp"

#ifdef TERABRIDGE_HAVE_OPENMP
#include <omp.h>
#endif

namespace terabridge::detail {

/// Runs fn(i) for i in [0, n). Exceptions are held per index and the first
/// in index order is rethrown once every index has run.
template <class Fn>
void for_each_index(std::size_t n, const ExecutionPolicy& policy, Fn&& fn) {
  std::vector<std::exception_ptr> errors(n);
  auto guarded = [&](std::size_t i) {
    try {
      fn(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
#ifdef TERABRIDGE_HAVE_OPENMP
  if (policy.parallel) {
    const int threads = policy.jobs > 0 ? policy.jobs : omp_get_max_threads();
    const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 4) num_threads(threads)
    for (long long i = 0; i < count; ++i) guarded(static_cast<std::size_t>(i));
  } else
#else
  (void)policy;
#endif
  {
    for (std::size_t i = 0; i < n; ++i) guarded(i);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace terabridge::detail
