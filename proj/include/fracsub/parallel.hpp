#pragma once

#include <cstddef>
#include <functional>

namespace fracsub {

/// Worker count from FRACSUB_THREADS (default: hardware concurrency, at least 1).
unsigned worker_threads();

/// Calls body(i) for i in [0, n) on up to worker_threads() threads. The first exception thrown by any
/// call is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace fracsub
