#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace gmin {

/// Runs body(i) for i in [0, count) on up to `workers` threads. Work is
/// handed out by an atomic counter; the first exception is rethrown.
template <class F>
void parallel_for(std::size_t count, int workers, F&& body) {
    const std::size_t threads = std::max<std::size_t>(1, std::min<std::size_t>(workers, count));
    if (threads == 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < threads; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    next = count;
                }
            }
        });
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

inline int default_workers() {
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

}  // namespace gmin
