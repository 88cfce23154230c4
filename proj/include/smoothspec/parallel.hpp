#pragma once

#include <cstddef>
#include <functional>

namespace smoothspec {

// Worker cap: SMOOTHSPEC_THREADS if set to a positive integer, otherwise
// the hardware concurrency (at least 1).
unsigned thread_count();

// Runs body(i) for i in [0, n). Each index is handled exactly once; callers
// write results into per-index slots so output does not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace smoothspec
