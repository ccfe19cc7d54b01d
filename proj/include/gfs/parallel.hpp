#pragma once

#include <cstddef>
#include <functional>

namespace gfs {

// Global worker budget for parallel_for (0 = hardware concurrency).
void set_thread_budget(int n);
int thread_budget();

// Runs fn(i) for i in [0, n). Work is split into contiguous chunks across
// worker threads; nested calls run serially so the budget is never exceeded.
// Results must not depend on execution order.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace gfs
