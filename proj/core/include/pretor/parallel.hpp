#pragma once

#include <cstdint>
#include <functional>

namespace pretor {

// Runs fn(chunk_index, begin, end) over a partition of [0, n) using up to
// hardware_concurrency() worker threads and returns the number of chunks.
// Chunk boundaries depend only on n and the machine's thread count, so
// per-chunk results can be merged in chunk order for deterministic output.
int parallel_chunks(std::int64_t n,
                    const std::function<void(int, std::int64_t, std::int64_t)>& fn);

}  // namespace pretor
