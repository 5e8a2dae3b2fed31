#pragma once

#include <cstddef>
#include <functional>

namespace fw {

// Worker count: FINSLERWARP_THREADS when set and > 0, hardware concurrency
// otherwise (the value 0 also means auto).
std::size_t worker_count();

// Runs fn(i) for i in [0, count) across workers. Callers get determinism by
// writing result i into its own slot; no cross-thread reductions happen
// here. Exceptions are captured and rethrown on the calling thread.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace fw
