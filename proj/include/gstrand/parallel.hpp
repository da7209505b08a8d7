#pragma once

#include <functional>
#include <thread>
#include <vector>

namespace gstrand {

/// Splits [0, n) into contiguous chunks and runs fn(begin, end) on each.
/// A pure map over disjoint ranges: results are identical to the sequential
/// run regardless of the thread count.
inline void parallel_for_chunks(int n, int threads, const std::function<void(int, int)>& fn) {
    if (threads <= 1 || n < 2 * threads) {
        fn(0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    int chunk = (n + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        int b = t * chunk;
        int e = std::min(n, b + chunk);
        if (b >= e) break;
        pool.emplace_back(fn, b, e);
    }
    for (auto& th : pool) th.join();
}

}  // namespace gstrand
