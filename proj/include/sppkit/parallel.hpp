#pragma once

#include <cstddef>
#include <functional>

namespace sppkit {

/// Worker count: hardware concurrency, capped by the SPPKIT_THREADS
/// environment variable when it holds a positive integer.
int worker_count();

/// Runs fn(i) for i in [0, n) over contiguous chunks on worker_count() threads.
/// The first exception thrown by any chunk is rethrown on the caller.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace sppkit
