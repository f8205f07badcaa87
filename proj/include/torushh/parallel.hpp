#pragma once

#include <cstddef>
#include <functional>

namespace torushh {

// Thread cap: TORUSHH_THREADS if set (>=1), else hardware concurrency.
unsigned thread_count();
void set_thread_count(unsigned n);  // 0 restores the environment default

// Runs fn(i) for i in [0, n). Each index is handled exactly once; callers
// write results into preallocated slots so output order never depends on
// scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace torushh
