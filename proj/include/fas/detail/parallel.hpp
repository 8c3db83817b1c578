#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace fas::detail {

// Runs f(begin, end) over disjoint chunks of [0, n). Falls back to a single
// call for small n. Chunk boundaries do not depend on the thread count's
// scheduling, so results composed per-chunk stay deterministic.
template <typename F>
void parallel_chunks(std::size_t n, F&& f) {
    const unsigned hw = std::thread::hardware_concurrency();
    const unsigned threads = hw ? hw : 1;
    if (n < 256 || threads == 1) {
        f(std::size_t{0}, n);
        return;
    }
    const std::size_t chunk = (n + threads - 1) / threads;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t lo = t * chunk;
        if (lo >= n) break;
        const std::size_t hi = std::min(n, lo + chunk);
        pool.emplace_back([&f, lo, hi] { f(lo, hi); });
    }
    for (auto& th : pool) th.join();
}

}  // namespace fas::detail
