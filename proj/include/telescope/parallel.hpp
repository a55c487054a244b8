#pragma once

#include <cstddef>
#include <functional>

namespace telescope {

/// Worker count: TELESCOPE_THREADS if set and positive, else the hardware
/// concurrency (at least 1).
unsigned thread_budget();

/// Runs body(i) for i in [0, n) on up to thread_budget() threads. Callers
/// write results into slot i, so aggregation order never depends on
/// scheduling. The first exception thrown by any body is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace telescope
