#pragma once

#include <cstddef>
#include <functional>

namespace icfb {

// Worker count: `requested` if nonzero, else ICFB_WORKERS, else hardware threads.
unsigned resolve_workers(unsigned requested = 0);

// Runs body(i) for i in [0, count). Results must be written to per-index slots
// so that output does not depend on scheduling. The first exception thrown by
// any worker is rethrown after all workers stop.
void parallel_for(std::size_t count, unsigned workers,
                  const std::function<void(std::size_t)>& body);

} // namespace icfb
