#pragma once

#include <cstddef>
#include <functional>

namespace ballmap {

/// Number of workers: BALLMAP_THREADS if set (clamped to [1, 256]), else
/// hardware concurrency.
unsigned worker_count();

/// Runs fn(0..count-1) on a small thread pool. Work items must be
/// independent; the first exception thrown by any item is rethrown on the
/// caller after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace ballmap
