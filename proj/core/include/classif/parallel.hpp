#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace classif {

/// Resolves a worker count. `requested == 0` means "hardware concurrency".
/// The CLASSIFIABILITY_THREADS environment variable, when set to a positive
/// integer, caps the result.
std::size_t resolve_workers(std::size_t requested);

/// Runs body(begin, end) over contiguous chunks of [0, n). Chunk boundaries
/// depend only on n and the worker count; callers write results by index.
void parallel_for(std::size_t n, std::size_t workers,
                  const std::function<void(std::size_t, std::size_t)>& body);

/// Pairwise (tree) summation: split at len/2, recurse, add the halves.
double pairwise_sum(std::span<const double> values) noexcept;

}  // namespace classif
