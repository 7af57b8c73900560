#pragma once

#include <cstddef>
#include <functional>

namespace radial_gate {

/// Worker count: RADIAL_GATE_THREADS if set and positive, else hardware
/// concurrency (at least 1).
unsigned worker_count();

/// Runs body(i) for i in [0, n). Work is split into contiguous blocks; the
/// caller must not depend on execution order.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace radial_gate
