#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <type_traits>
#include <vector>

namespace qone {

// Worker count used by parallel_map; 1 runs everything inline.
void set_thread_count(int n);
int thread_count();

// Results are stored by index, so the output never depends on scheduling.
// The exception of the lowest failing index is rethrown.
template <class F>
auto parallel_map(std::size_t n, F&& f) -> std::vector<std::invoke_result_t<F&, std::size_t>> {
    using R = std::invoke_result_t<F&, std::size_t>;
    std::vector<R> out(n);
    std::vector<std::exception_ptr> errs(n);
    const std::size_t workers = std::min<std::size_t>(n, std::max(1, thread_count()));
    auto run = [&](std::size_t i) {
        try {
            out[i] = f(i);
        } catch (...) {
            errs[i] = std::current_exception();
        }
    };
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) run(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i; (i = next.fetch_add(1)) < n;) run(i);
            });
        for (auto& t : pool) t.join();
    }
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    return out;
}

}  // namespace qone
