#pragma once

#include <cstddef>
#include <functional>

namespace specgap {

// Worker cap: min(SPECGAP_THREADS, hardware_concurrency), at least 1.
int worker_count();

// Runs fn(i) for i in [0, count). Each index writes only its own output slot,
// so results are identical for any worker count; reductions happen afterwards
// in index order on the caller's side.
void parallel_for_index(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace specgap
