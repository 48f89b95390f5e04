#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <type_traits>
#include <vector>

namespace rsl {

/// Applies f to every item on up to `jobs` threads. Results come back in input
/// order, so the output never depends on the worker count. The exception from
/// the lowest failing index is rethrown after all workers finish.
template <class T, class F>
auto parallel_map(const std::vector<T>& items, int jobs, F f) {
    using R = std::invoke_result_t<F&, const T&>;
    const std::size_t n = items.size();
    std::vector<R> out(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                out[i] = f(items[i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };

    const auto threads = static_cast<std::size_t>(std::clamp(jobs, 1, 256));
    if (threads == 1 || n <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        const std::size_t count = std::min(threads, n);
        pool.reserve(count);
        for (std::size_t k = 0; k < count; ++k) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

} // namespace rsl
