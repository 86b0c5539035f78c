#pragma once

#include <cstddef>
#include <functional>

namespace cineloop {

/// Worker count from CINELOOP_THREADS, else the hardware concurrency (>= 1).
int default_thread_count();

/// Runs fn(i) for i in [0, count) on up to `threads` workers. The first
/// exception by index is rethrown after all workers finish.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace cineloop
