#pragma once
#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace smoothprog {

// Worker count for every parallel loop in the toolkit: SMOOTHPROG_THREADS
// when set to 1..256, hardware concurrency otherwise.
unsigned worker_threads();

// out[i] = task(i) with workers striding round-robin over the indices.
// Each slot depends only on its own index and the caller combines slots in
// whatever order it chooses, so results never depend on the thread count.
// If tasks throw, the exception from the lowest index is rethrown.
template <typename T, typename Fn>
void fill_indexed(std::vector<T>& out, Fn task)
{
    const std::size_t n = out.size();
    std::vector<std::exception_ptr> errors(n);
    const auto guarded = [&](std::size_t i) {
        try {
            out[i] = task(i);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };
    const std::size_t workers = std::min<std::size_t>(worker_threads(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) guarded(i);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&guarded, w, n, workers] {
                for (std::size_t i = w; i < n; i += workers) guarded(i);
            });
        for (auto& th : pool) th.join();
    }
    for (std::size_t i = 0; i < n; ++i)
        if (errors[i]) std::rethrow_exception(errors[i]);
}

} // namespace smoothprog
