#pragma once

#include <cstddef>
#include <functional>

namespace ncp {

// Worker count honoring the NCP_THREADS environment variable.
// Unset, empty, or 0 means hardware concurrency; 1 disables threading.
int worker_count();

// Runs fn(i) for i in [0, n). Work is split into contiguous chunks; results
// must be written to disjoint slots so the merge is order-independent.
// Falls back to a serial loop when n or worker_count() is small.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace ncp
