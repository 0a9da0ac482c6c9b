#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace bolab {

// Worker count: explicit request > BOLAB_THREADS env var > hardware. Always >= 1.
inline int resolve_threads(int requested = 0) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("BOLAB_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

// Static block partition of [begin, end) over nthreads workers. Each worker
// gets a contiguous range, so any per-index output written exactly once is
// deterministic regardless of the worker count. fn(i0, i1) handles [i0, i1).
inline void parallel_for(long long begin, long long end, int nthreads,
                         const std::function<void(long long, long long)>& fn) {
    const long long total = end - begin;
    if (total <= 0) return;
    nthreads = resolve_threads(nthreads);
    if (nthreads == 1 || total == 1) {
        fn(begin, end);
        return;
    }
    if (static_cast<long long>(nthreads) > total) nthreads = static_cast<int>(total);
    std::vector<std::thread> workers;
    workers.reserve(static_cast<size_t>(nthreads));
    const long long chunk = (total + nthreads - 1) / nthreads;
    for (int t = 0; t < nthreads; ++t) {
        const long long i0 = begin + t * chunk;
        const long long i1 = std::min(end, i0 + chunk);
        if (i0 >= i1) break;
        workers.emplace_back([&fn, i0, i1] { fn(i0, i1); });
    }
    for (auto& w : workers) w.join();
}

} // namespace bolab
