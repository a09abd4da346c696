#pragma once

#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace decaykit {

// Worker-pool size from DECAYKIT_THREADS; absent means single-threaded.
inline unsigned worker_count()
{
    const char* env = std::getenv("DECAYKIT_THREADS");
    if (!env || !*env) return 1;
    const long v = std::strtol(env, nullptr, 10);
    if (v <= 1) return 1;
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    return unsigned(std::min<long>(v, hw));
}

// Index-parallel map; results land wherever body writes them, so output
// order is the grid order regardless of completion order.
template <typename F>
void parallel_for(std::size_t n, F&& body)
{
    const unsigned workers = worker_count();
    if (workers <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n || failed.load()) return;
                try {
                    body(i);
                } catch (...) {
                    if (!failed.exchange(true)) first_error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace decaykit
