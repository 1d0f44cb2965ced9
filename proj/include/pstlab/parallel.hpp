#pragma once

#include <cstddef>
#include <functional>

namespace pstlab {

// Worker count: PSTLAB_THREADS when set to a positive integer, otherwise the
// hardware concurrency (at least 1).
int thread_count();

// Runs body(chunk) for chunk in [0, chunks) on up to thread_count() threads.
// Chunks are claimed dynamically; callers write results into per-chunk slots
// so the outcome does not depend on scheduling.
void parallel_for(std::size_t chunks, const std::function<void(std::size_t)>& body);

}  // namespace pstlab
