#ifndef REFRABILL_TOOLS_POOL_HPP
#define REFRABILL_TOOLS_POOL_HPP

// Minimal worker pool for embarrassingly parallel sweeps. Work items are pure
// closures over immutable inputs; results land in pre-sized slots, so the
// output order is deterministic regardless of scheduling. REFRABILL_THREADS
// caps the worker count.

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace refrabill::tools {

inline int worker_count(int requested) {
    int n = requested > 0 ? requested : int(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    if (const char* cap = std::getenv("REFRABILL_THREADS")) {
        const int c = std::atoi(cap);
        if (c > 0 && c < n) n = c;
    }
    return n;
}

/// Runs fn(i) for i in [0, n) on a small pool; fn must not throw.
inline void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
    const int workers = std::min(worker_count(threads), std::max(1, n));
    if (workers == 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> crew;
    crew.reserve(workers);
    for (int w = 0; w < workers; ++w)
        crew.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    for (auto& t : crew) t.join();
}

} // namespace refrabill::tools

#endif
