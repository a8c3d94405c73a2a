#ifndef SMALLWORLD_PARALLEL_HPP
#define SMALLWORLD_PARALLEL_HPP

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace smallworld {

/// Runs fn(i) for i in [0, count) on up to `workers` threads. Work items
/// are claimed from a shared counter; callers must write results into
/// per-index slots so the outcome is independent of scheduling.
template <typename Fn>
void parallel_for(int count, int workers, Fn&& fn) {
    if (workers <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    auto worker = [&] {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= count) return;
            fn(i);
        }
    };
    int n_threads = std::min(workers, count);
    std::vector<std::thread> threads;
    threads.reserve(n_threads);
    for (int t = 0; t < n_threads; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
}

/// Worker count: explicit request, else SMALLWORLD_THREADS, else the
/// hardware concurrency.
inline int resolve_workers(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("SMALLWORLD_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

} // namespace smallworld

#endif
