#pragma once

#include <cstddef>
#include <functional>

namespace nls4 {

// Worker count used by parallel_for; 0 means hardware concurrency.
void set_thread_count(int n);
int thread_count();

// Runs body(i) for i in [0, n). Each index is handled exactly once; callers write
// results by index so the outcome never depends on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace nls4
