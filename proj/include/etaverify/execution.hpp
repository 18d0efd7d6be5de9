#pragma once

#include <cstddef>
#include <exception>
#include <vector>

namespace etaverify {

/// Selects between the OpenMP kernel and its serial reference. Both produce
/// bit-identical results: work items write to their own slot and any
/// reduction happens afterwards in index order.
enum class Execution { serial, parallel };

/// Calls fn(i) for i in [0, n). Exceptions thrown by fn are captured per
/// index and the lowest-index one is rethrown once all items have run, so
/// the error seen by the caller does not depend on thread scheduling.
template <class Fn>
void for_each_index(std::size_t n, Execution execution, Fn&& fn) {
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<long>(n);
  if (execution == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) {
      try {
        fn(static_cast<std::size_t>(i));
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  } else {
    for (long i = 0; i < count; ++i) {
      try {
        fn(static_cast<std::size_t>(i));
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace etaverify
