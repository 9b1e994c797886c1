#include "fhd/util/parallel.hpp"

#include <algorithm>

namespace fhd {

namespace {
std::atomic<int> g_threads{0};
}

int parallel_threads() {
    int n = g_threads.load();
    if (n <= 0) {
        unsigned hc = std::thread::hardware_concurrency();
        n = hc == 0 ? 1 : static_cast<int>(hc);
    }
    return n;
}

void set_parallel_threads(int n) { g_threads.store(n); }

void parallel_for_chunks(std::size_t n, std::size_t chunk_size,
                         const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
    if (n == 0) return;
    if (chunk_size == 0) chunk_size = 1;
    const std::size_t nchunks = chunk_count(n, chunk_size);
    const int nthreads = std::min<std::size_t>(parallel_threads(), nchunks);
    if (nthreads <= 1) {
        for (std::size_t c = 0; c < nchunks; ++c) {
            const std::size_t b = c * chunk_size;
            fn(c, b, std::min(n, b + chunk_size));
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t c = next.fetch_add(1);
            if (c >= nchunks) return;
            const std::size_t b = c * chunk_size;
            fn(c, b, std::min(n, b + chunk_size));
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nthreads) - 1);
    for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    // Chunk size keeps dispatch overhead low without starving 2-core hosts.
    std::size_t chunk = std::max<std::size_t>(1, n / (8 * static_cast<std::size_t>(parallel_threads())));
    chunk = std::min<std::size_t>(chunk, 4096);
    parallel_for_chunks(n, chunk, [&](std::size_t, std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) fn(i);
    });
}

}  // namespace fhd
