#pragma once

#include <cstddef>
#include <functional>

namespace classicality {

/// Worker count: CLASSICALITY_THREADS if set (>= 1), else the hardware
/// concurrency.
unsigned thread_count();

/// Runs body(i) for i in [0, count) on up to thread_count() threads.  Calls
/// made from inside a worker run serially.  The first exception thrown by a
/// body is rethrown after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace classicality
