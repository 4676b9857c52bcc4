#pragma once

#include <cstddef>
#include <functional>

namespace quermass {

/// Worker count: QUERMASS_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
int worker_count();

/// Calls body(begin, end) on contiguous chunks of [0, count) across workers.
/// Chunks write to disjoint output slots, so results never depend on the
/// worker count. The first exception thrown by a worker is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t)>& body);

} // namespace quermass
