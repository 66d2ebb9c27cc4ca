#pragma once

#include <cstddef>
#include <functional>

namespace hubs {

// Execution policy for banks of independent per-source structures. kSerial
// is the reference path; tests require both to produce identical state.
enum class Exec { kSerial, kParallel };

// Runs f(0) .. f(count - 1). Under kParallel the calls are spread over
// OpenMP threads in no particular order. The first exception thrown by any
// call is rethrown after all calls finish.
void parallel_for(std::size_t count, Exec exec,
                  const std::function<void(std::size_t)>& f);

int max_threads();

}  // namespace hubs
