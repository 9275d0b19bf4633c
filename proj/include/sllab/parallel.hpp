#pragma once

#include <cstddef>
#include <functional>

namespace sllab {

/// Worker count: hardware concurrency, capped by SLLAB_THREADS when set.
unsigned worker_threads();

/// Splits [0, count) into at most `threads` contiguous chunks and runs
/// body(chunk_index, begin, end) for each, concurrently. Chunk boundaries
/// depend only on count and the chunk count, so callers can merge per-chunk
/// results in chunk order for deterministic output.
void parallel_chunks(std::size_t count, unsigned threads,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

/// Number of chunks parallel_chunks will use.
std::size_t chunk_count(std::size_t count, unsigned threads);

}  // namespace sllab
