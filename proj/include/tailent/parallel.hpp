#pragma once

#include <cstddef>
#include <functional>

namespace tailent {

// Worker count used by every estimator. Defaults to TAILENT_THREADS, else the
// hardware concurrency.
int thread_count();
void set_thread_count(int n);

// Runs body(i) for i in [0, n). Each index is handled by exactly one worker,
// so callers that write only to slot i get results independent of scheduling.
// The exception thrown at the lowest index is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace tailent
