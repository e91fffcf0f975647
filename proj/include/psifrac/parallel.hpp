#pragma once

#include <cstddef>
#include <functional>

namespace psifrac {

/// Upper bound on worker threads for nodewise loops. Read once from
/// PSIFRAC_THREADS (default 1); set_thread_cap overrides it.
std::size_t thread_cap();
void set_thread_cap(std::size_t cap);

/// Splits [0, n) into contiguous chunks and runs body(begin, end) on each.
/// Each index is owned by exactly one chunk, so per-index results do not
/// depend on the schedule.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body,
                  std::size_t min_chunk = 128);

} // namespace psifrac
