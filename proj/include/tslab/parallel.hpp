#pragma once

#include <cstddef>
#include <functional>

namespace tslab {

/// Worker count used by parallel_for (default 1).
void set_thread_count(unsigned n);
unsigned thread_count() noexcept;

/// Calls body(i) for i in [0, count) using static contiguous chunks. Each
/// index is handled exactly once and writes must go to disjoint slots, so
/// results never depend on the worker count. The first exception thrown
/// by a worker (lowest chunk) is rethrown. Calls made from inside a worker
/// run serially.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace tslab
