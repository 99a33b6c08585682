#ifndef TOM_PARALLEL_HPP
#define TOM_PARALLEL_HPP

#include <functional>
#include <thread>
#include <vector>

namespace tom::detail {

/// Runs fn(i) for i in [0, n). Workers own disjoint contiguous chunks, so
/// results are schedule-independent as long as fn writes only to slot i.
inline void parallel_for(size_t n, int threads, const std::function<void(size_t)>& fn) {
    if (n == 0) return;
    size_t workers = threads > 1 ? std::min<size_t>(static_cast<size_t>(threads), n) : 1;
    if (workers <= 1) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    size_t chunk = (n + workers - 1) / workers;
    for (size_t w = 0; w < workers; ++w) {
        size_t begin = w * chunk;
        size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([begin, end, &fn] {
            for (size_t i = begin; i < end; ++i) fn(i);
        });
    }
    for (std::thread& t : pool) t.join();
}

} // namespace tom::detail

#endif
