#pragma once

#include <cstddef>
#include <functional>

namespace greedylab {

// Worker count: GREEDYLAB_THREADS when set (>= 1), else hardware concurrency.
int thread_count();

// Runs body(i) for every i in [0, count). Work items are claimed dynamically,
// so callers must write results into per-item slots and reduce them in index
// order afterwards; that keeps results independent of the schedule.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace greedylab
