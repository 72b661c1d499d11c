#pragma once

#include <cstdint>
#include <functional>

namespace ranksel {

// Runs fn(0..count-1) on `threads` workers pulling indices from a shared
// counter. Work items must not share mutable state; results keyed by index
// are identical for every thread count. The first exception thrown by any
// worker is rethrown on the caller.
void parallel_for(std::int64_t count, std::int32_t threads,
                  const std::function<void(std::int64_t)>& fn);

}  // namespace ranksel
