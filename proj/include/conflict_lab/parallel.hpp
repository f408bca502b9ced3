#pragma once

#include <cstddef>
#include <functional>

namespace clab {

/// Worker count: hardware concurrency, capped by CONFLICT_LAB_THREADS when set.
unsigned worker_count();

/// Runs fn(i) for i in [0, count) across worker_count() threads. Each index
/// runs exactly once; callers write results into per-index slots so the
/// outcome does not depend on scheduling. The first exception thrown by any
/// task is rethrown after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace clab
