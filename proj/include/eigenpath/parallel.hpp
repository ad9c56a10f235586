#pragma once

#include <cstddef>
#include <functional>

namespace eigenpath {

/// Worker cap: EIGENPATH_THREADS when set (>= 1), else hardware concurrency.
unsigned worker_count();

/// Run fn(i) for i in [0, n). Work is split across at most worker_count()
/// threads; the first exception is rethrown after all workers join. Callers
/// must write results into per-index slots so the outcome is order-independent.
void parallel_for_index(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace eigenpath
