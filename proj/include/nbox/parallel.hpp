#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace nbox {

// Worker count resolution: explicit request wins, then the NBOX_WORKERS
// environment variable, then hardware concurrency.
inline int resolve_workers(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("NBOX_WORKERS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

// Runs fn(job) for jobs 0..count-1 on `workers` threads.  Results land in a
// slot per job index, so downstream merges never depend on scheduling order.
template <typename R>
std::vector<R> run_jobs(int count, int workers, const std::function<R(int)>& fn) {
    std::vector<R> results(static_cast<std::size_t>(count));
    if (count == 0) return results;
    workers = std::min(workers, count);
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) results[i] = fn(i);
        return results;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i = next++; i < count; i = next++) results[i] = fn(i);
        });
    for (auto& t : pool) t.join();
    return results;
}

}  // namespace nbox
