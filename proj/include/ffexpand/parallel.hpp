#pragma once

#include <cstddef>
#include <functional>

namespace ffx {

/// Worker count: hardware concurrency, capped by FFEXPAND_THREADS when set
/// to a positive integer. Always at least 1.
unsigned worker_count();

/// Splits [0, n) into `workers` contiguous chunks and runs body(worker, begin, end)
/// on each, one thread per chunk. The first exception thrown is rethrown.
void parallel_chunks(std::size_t n, unsigned workers,
                     const std::function<void(unsigned, std::size_t, std::size_t)>& body);

}  // namespace ffx
