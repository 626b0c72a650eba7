#pragma once

#include <cstddef>
#include <functional>

namespace ffm {

// Worker count for a --threads value; 0 means one per hardware thread.
int resolve_threads(int threads);

// Calls fn(i) for every i in [0, n). Worker w gets the w-th contiguous block.
// Callers write results by index and reduce them in index order afterwards,
// so output never depends on the thread count. The exception thrown at the
// smallest index is rethrown.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace ffm
