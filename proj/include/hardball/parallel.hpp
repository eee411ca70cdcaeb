#pragma once

#include <cstddef>
#include <functional>

namespace hardball {

/// Calls fn(i) for i in [0, count) on up to `threads` workers. Results must be
/// written to per-index slots; the first exception is rethrown.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& fn);

/// HARDBALL_THREADS, or 1 when unset or invalid.
std::size_t default_threads();

}  // namespace hardball
