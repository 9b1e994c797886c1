#ifndef FHD_UTIL_PARALLEL_HPP
#define FHD_UTIL_PARALLEL_HPP

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace fhd {

// Active worker count for grid sweeps and sample batches. 0 means
// hardware_concurrency. Set once per job from --threads / FHD_THREADS.
int parallel_threads();
void set_parallel_threads(int n);

// Runs fn(i) for i in [0, n). Work is handed out in fixed-size chunks so
// results written by index are identical for every thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

// Chunked variant: fn(chunk_index, begin, end). Chunk boundaries depend only
// on n and chunk_size, so per-chunk partial results can be merged in chunk
// order to give thread-count-independent reductions.
void parallel_for_chunks(std::size_t n, std::size_t chunk_size,
                         const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

inline std::size_t chunk_count(std::size_t n, std::size_t chunk_size) {
    return chunk_size == 0 ? 0 : (n + chunk_size - 1) / chunk_size;
}

}  // namespace fhd

#endif
