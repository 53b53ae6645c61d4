#pragma once

#include <cstddef>
#include <functional>

namespace regioncert {

/// Worker count from REGIONCERT_THREADS, else hardware concurrency (>= 1).
std::size_t default_thread_count();

/// Splits [0, count) into contiguous chunks and runs fn(begin, end) on up to
/// `threads` workers (0 = default_thread_count()). Chunk boundaries depend
/// only on count and the worker count; fn must write disjoint outputs.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace regioncert
