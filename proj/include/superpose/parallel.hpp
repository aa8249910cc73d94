#pragma once

#include <cstddef>
#include <functional>

namespace superpose {

// Worker count: SUPERPOSE_THREADS if set and positive, else hardware
// concurrency (at least 1).
std::size_t worker_count();

// Runs body(i) for i in [0, n). Each index is handled exactly once; callers
// write results into per-index slots so output never depends on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace superpose
