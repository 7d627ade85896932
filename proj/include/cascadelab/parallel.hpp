#pragma once

#include <cstddef>
#include <functional>

namespace cascadelab {

/// Runs fn(i) for every i in [0, n) on up to `jobs` threads.
/// Callers make fn(i) write only to index-i slots, so results do not depend
/// on scheduling. jobs <= 1 runs inline. The first exception thrown by any
/// worker is rethrown after all workers join.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn);

/// Logical core count (>= 1).
int default_jobs();

} // namespace cascadelab
