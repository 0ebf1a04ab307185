// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>

namespace ellrange {

/// Worker count: ELLIPTIC_RANGE_THREADS when set and positive, otherwise the
/// hardware concurrency (0 in the variable means auto).
unsigned thread_count() noexcept;

/// Runs body(i) for i in [0, n). Indices are split into contiguous chunks,
/// one per worker; body must only write to per-index state so results do not
/// depend on scheduling. Falls back to a plain loop below min_parallel.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  std::size_t min_parallel = 256);

}  // namespace ellrange
