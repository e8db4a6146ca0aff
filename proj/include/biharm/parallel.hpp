#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace biharm {

/// Environment variable overriding the worker count of parallel_for.
inline constexpr const char* kThreadsEnvVar = "BIHARM_THREADS";

/// Worker count: BIHARM_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
unsigned thread_count();

/// Calls fn(i) for every i in [0, n). Work is handed out in index blocks via
/// an atomic counter; fn must only write state owned by index i, which makes
/// the result independent of scheduling. The first exception thrown by any
/// worker is rethrown on the calling thread.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn, std::size_t block = 64)
{
    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(thread_count(), (n + block - 1) / block));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        try {
            for (;;) {
                const std::size_t start = next.fetch_add(block);
                if (start >= n) {
                    return;
                }
                const std::size_t stop = std::min(n, start + block);
                for (std::size_t i = start; i < stop; ++i) {
                    fn(i);
                }
            }
        } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) {
                error = std::current_exception();
            }
            next.store(n);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (unsigned t = 1; t < workers; ++t) {
        pool.emplace_back(work);
    }
    work();
    for (auto& th : pool) {
        th.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

}  // namespace biharm
