#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace covlab {

// Number of worker threads: COVLAB_THREADS if set (>=1), else hardware count.
inline int thread_count() {
    if (const char* env = std::getenv("COVLAB_THREADS")) {
        int k = std::atoi(env);
        if (k >= 1) return k;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

// Splits [0, n) into contiguous chunks, one per worker. Deterministic: the
// result must not depend on which worker ran which chunk.
inline void parallel_chunks(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body) {
    int workers = thread_count();
    if (workers <= 1 || n < 2) {
        body(0, n);
        return;
    }
    if (static_cast<std::size_t>(workers) > n) workers = static_cast<int>(n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::size_t chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        std::size_t lo = w * chunk;
        std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back(body, lo, hi);
    }
    for (auto& t : pool) t.join();
}

}  // namespace covlab
