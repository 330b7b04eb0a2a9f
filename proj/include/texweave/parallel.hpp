// Copyright contributors to the texweave project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>

namespace texweave {

// Caps the number of worker threads used by parallel_for. 0 picks the
// hardware concurrency. All outputs are required to be independent of
// this setting; parallel_for only ever hands out disjoint index ranges.
void set_max_threads(int n);
int max_threads();

// Runs fn(i) for i in [begin, end) on contiguous per-worker chunks.
// Falls back to a plain loop when the range is small or one thread is
// configured.
void parallel_for(int64_t begin, int64_t end, const std::function<void(int64_t)>& fn);

// Chunked variant: fn(chunk_begin, chunk_end) per worker chunk.
void parallel_for_chunks(int64_t begin, int64_t end,
                         const std::function<void(int64_t, int64_t)>& fn);

}  // namespace texweave
