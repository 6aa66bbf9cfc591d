#pragma once

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace elliptica {

/// Worker count: ELLIPTICA_THREADS when set, hardware concurrency otherwise.
inline int harness_threads() {
    if (const char* env = std::getenv("ELLIPTICA_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

/// Runs fn(i) for i in [0, n) across a fixed static partition. Callers write
/// results into index-addressed slots, so the aggregate is byte-identical for
/// every worker count.
template <typename F>
void parallel_for(long n, F&& fn, int threads = 0) {
    if (threads <= 0) threads = harness_threads();
    if (threads <= 1 || n <= 1) {
        for (long i = 0; i < n; ++i) fn(i);
        return;
    }
    const long width = std::min<long>(threads, n);
    std::vector<std::thread> pool;
    pool.reserve(width);
    for (long w = 0; w < width; ++w) {
        pool.emplace_back([&fn, w, width, n]() {
            for (long i = w; i < n; i += width) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace elliptica
