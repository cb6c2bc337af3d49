#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace dimerfl {

/// Runs fn(i) for i in [0, n) on up to `jobs` threads. Work items are
/// independent; results must be written to pre-sized storage indexed by i,
/// which keeps output deterministic regardless of scheduling. The first
/// exception thrown by a worker is rethrown on the calling thread.
template <class F>
void parallel_for(std::size_t n, unsigned jobs, F&& fn) {
    if (n == 0) return;
    const unsigned workers = std::min<std::size_t>(std::max(1u, jobs), n);
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n || failed.load()) return;
                try {
                    fn(i);
                } catch (...) {
                    if (!failed.exchange(true)) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace dimerfl
