#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace elastic {

/** Run fn(0) ... fn(n-1) on up to `jobs` threads. fn must only write to per-index state.
 *  If some calls throw, the exception of the lowest index is rethrown once all workers are done,
 *  so the outcome does not depend on scheduling.
 */
template<typename Fn>
void parallel_for(std::size_t n, unsigned jobs, Fn&& fn) {
    std::vector<std::exception_ptr> errors(n);
    const auto run = [&](std::size_t k) {
        try {
            fn(k);
        } catch (...) { errors[k] = std::current_exception(); }
    };
    const auto workers = static_cast<std::size_t>(std::min<std::size_t>(jobs, n));
    if (workers <= 1) {
        for (std::size_t k = 0; k < n; ++k) { run(k); }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t k = next++; k < n; k = next++) { run(k); }
            });
        }
    }
    for (const auto& e : errors) {
        if (e) { std::rethrow_exception(e); }
    }
}

} // namespace elastic
