#pragma once

#include <cstdint>
#include <functional>

namespace randig {

/// Worker count: RANDIG_THREADS when set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
unsigned thread_count();

/// Runs body(chunk, begin, end) over `chunks` contiguous pieces of [0, total).
/// Chunk boundaries depend only on (total, chunks), never on the worker count,
/// so callers that reduce per-chunk results in chunk order are deterministic.
void parallel_chunks(std::uint64_t total, unsigned chunks,
                     const std::function<void(unsigned, std::uint64_t, std::uint64_t)>& body);

}  // namespace randig
