#pragma once

#include <cstddef>
#include <functional>

namespace gmg {

// Worker count for parallel_for; defaults to the hardware concurrency.
void set_thread_count(std::size_t threads);
std::size_t thread_count();

/**
 * Runs body(i) for i in [0, count). Calls made from inside a worker run
 * sequentially, so nested parallel regions do not oversubscribe. The first
 * exception thrown by a body is rethrown after all workers finish. Callers
 * write results into per-index slots so output does not depend on scheduling.
 */
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

} // namespace gmg
