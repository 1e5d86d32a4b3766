#pragma once

// Deterministic chunked parallelism for scan kernels. Work is split into
// contiguous chunks; callers merge per-chunk partials in chunk order, so
// results do not depend on the thread count.

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace mucrit::detail {

// requested > 0 wins, then the MUCRIT_THREADS environment variable,
// then hardware concurrency.
inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("MUCRIT_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

template <typename Fn>
void parallel_chunks(long total, int threads, Fn&& fn) {
    if (total <= 0) return;
    threads = std::min<long>(resolve_threads(threads), total);
    if (threads <= 1) {
        fn(0, 0L, total);
        return;
    }
    const long chunk = (total + threads - 1) / threads;
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex error_mutex;
    for (int t = 0; t < threads; ++t) {
        const long begin = t * chunk;
        const long end = std::min(total, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&, t, begin, end] {
            try {
                fn(t, begin, end);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace mucrit::detail
