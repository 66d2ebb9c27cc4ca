#include "hubs/parallel.hpp"

#include <omp.h>

#include <exception>
#include <mutex>

namespace hubs {

void parallel_for(std::size_t count, Exec exec,
                  const std::function<void(std::size_t)>& f) {
  if (exec == Exec::kSerial || count < 2) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::exception_ptr first;
  std::mutex mu;
  const auto signed_count = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < signed_count; ++i) {
    try {
      f(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard lock(mu);
      if (!first) first = std::current_exception();
    }
  }
  if (first) std::rethrow_exception(first);
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace hubs
