#pragma once

#include <cstddef>
#include <exception>
#include <vector>

#include <omp.h>

namespace levy_smile {

// Worker count: OpenMP's default, capped by LEVY_SMILE_THREADS when set.
int worker_count();

// Evaluates f(0..n-1) across workers; the result is ordered by index and does
// not depend on the worker count. The exception of the lowest failing index is
// rethrown after the loop.
template <class F>
auto parallel_map(std::size_t n, F&& f) -> std::vector<decltype(f(std::size_t{0}))> {
  using R = decltype(f(std::size_t{0}));
  std::vector<R> out(n);
  std::vector<std::exception_ptr> errors(n);
  const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(worker_count())
  for (long long i = 0; i < count; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

template <class F>
auto serial_map(std::size_t n, F&& f) -> std::vector<decltype(f(std::size_t{0}))> {
  std::vector<decltype(f(std::size_t{0}))> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(f(i));
  return out;
}

}  // namespace levy_smile
