#pragma once

#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace nqsim {

/// Worker count for `jobs` independent tasks: hardware concurrency, capped
/// by the NQ_THREADS environment variable when set.
inline std::size_t worker_count(std::size_t jobs) {
    std::size_t n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* cap = std::getenv("NQ_THREADS")) {
        const long parsed = std::strtol(cap, nullptr, 10);
        if (parsed >= 1 && static_cast<std::size_t>(parsed) < n) {
            n = static_cast<std::size_t>(parsed);
        }
    }
    return n < jobs ? n : (jobs == 0 ? 1 : jobs);
}

/// Runs fn(0..n-1) across worker threads; rethrows the first exception after
/// all workers finish. Results must be written to disjoint slots by index.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    if (n == 0) return;
    const std::size_t workers = worker_count(n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (std::thread& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace nqsim
