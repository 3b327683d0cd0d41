#pragma once

#include <cstddef>
#include <functional>

namespace torcomb {

// Worker count: TORCOMB_THREADS if set to a positive integer, else the hardware concurrency.
int default_thread_count();

// Runs body(i) for i in [0, count) on up to `threads` workers. Work is claimed
// dynamically; callers must make results independent of scheduling.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

}  // namespace torcomb
