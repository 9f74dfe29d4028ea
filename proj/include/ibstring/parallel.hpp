#pragma once

#include <cstddef>
#include <functional>

namespace ibstring {

/// Worker count: IBSTRING_THREADS if set to a positive integer, otherwise
/// std::thread::hardware_concurrency() (at least 1).
unsigned worker_count();

/// Calls body(i) for every i in [0, n), split into contiguous blocks across
/// worker threads. Each index is handled by exactly one call, so results that
/// depend only on i are identical to a serial loop. The first exception thrown
/// by any block is rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace ibstring
