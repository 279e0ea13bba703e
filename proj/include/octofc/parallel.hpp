#pragma once

#include <cstddef>
#include <functional>

namespace octofc {

// worker count: OCTOFC_THREADS if set, else hardware concurrency
unsigned thread_budget();

// runs fn(i) for i in [0, n); each index is handled exactly once, so writes
// to slot i keep the output independent of the thread count
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace octofc
