#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace nilzeta::detail {

/// Runs task(0..ntasks-1) on up to `jobs` threads (0: hardware concurrency).
/// The first exception thrown by a task is rethrown after all workers stop.
template <class Task>
void run_parallel(std::size_t ntasks, unsigned jobs, Task&& task) {
    unsigned n = jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : jobs;
    n = static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(ntasks, 1)));
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    auto worker = [&]() {
        try {
            for (std::size_t i; (i = next.fetch_add(1)) < ntasks;)
                task(i);
        } catch (...) {
            std::lock_guard lk(err_mu);
            if (!err)
                err = std::current_exception();
        }
    };
    if (n <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < n; ++t)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
    }
    if (err)
        std::rethrow_exception(err);
}

} // namespace nilzeta::detail
