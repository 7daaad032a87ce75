#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace gridweave {

/// Worker count: hardware concurrency, capped by GRIDWEAVE_THREADS when set.
std::size_t worker_count();

/// Runs body(i) for i in [0, count) on up to worker_count() threads. Work is
/// handed out one index at a time; the first exception is rethrown.
template <typename Body>
void parallel_for(std::size_t count, Body&& body) {
    const auto workers = std::min(worker_count(), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto run = [&] {
        for (;;) {
            const auto i = next.fetch_add(1);
            if (i >= count || failed.load()) {
                return;
            }
            try {
                body(i);
            } catch (...) {
                if (!failed.exchange(true)) {
                    failure = std::current_exception();
                }
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back(run);
    }
    for (auto& t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

/// Sum of body(i) over [0, count); per-index results are reduced in index
/// order so the total does not depend on scheduling.
template <typename Body>
std::uint64_t parallel_sum(std::size_t count, Body&& body) {
    std::vector<std::uint64_t> partial(count, 0);
    parallel_for(count, [&](std::size_t i) { partial[i] = body(i); });
    std::uint64_t total = 0;
    for (auto v : partial) {
        total += v;
    }
    return total;
}

}  // namespace gridweave
