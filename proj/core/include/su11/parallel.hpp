#pragma once

#include <cstddef>
#include <functional>

namespace su11 {

// Worker count: SU11_THREADS if set (>= 1), else the hardware concurrency.
unsigned worker_count();

// Runs fn(i) for i in [0, n). Workers claim indices from a shared counter, so each
// index runs exactly once. If several calls throw, the exception of the lowest index is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, unsigned threads = 0);

}  // namespace su11
