#pragma once

#include <functional>

namespace ranc {

// Worker cap: hardware concurrency, reduced by the RANDOM_ANC_THREADS
// environment variable when set (minimum 1).
int max_workers();

// Runs fn(0..n_tasks-1) across up to `workers` threads (0 = max_workers()).
// Tasks must be independent; exceptions propagate to the caller.
void parallel_for(int n_tasks, const std::function<void(int)>& fn, int workers = 0);

}  // namespace ranc
