#pragma once

#include <cstddef>
#include <functional>

namespace fdts {

/// Worker count: `FRACDIFF_THREADS` if set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
std::size_t max_threads();

/// Runs `body(i)` for every i in [0, count). Indices are split into contiguous
/// blocks, one per worker, so callers writing to slot i get schedule-independent
/// results. The first exception thrown by any worker is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace fdts
