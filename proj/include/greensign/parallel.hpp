#pragma once

#include <functional>

namespace greensign {

// GREENSIGN_THREADS environment override, else hardware concurrency.
int default_thread_count();

// Runs fn(i) for i in [0, n) across at most `threads` workers (0 = default).
// Indices are partitioned into contiguous chunks; the first exception thrown
// by any worker is rethrown after all join.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

}  // namespace greensign
