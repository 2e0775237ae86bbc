#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace bestad {

/// Static-chunk parallel loop. Each index is processed exactly once and the
/// body writes only to its own slot, so results are identical for any thread
/// count (including 1).
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn, unsigned max_threads = 0) {
    unsigned hw = max_threads ? max_threads : std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (hw == 1 || n < 2 * hw) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> workers;
    workers.reserve(hw);
    const std::size_t chunk = (n + hw - 1) / hw;
    for (unsigned t = 0; t < hw; ++t) {
        const std::size_t lo = t * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        workers.emplace_back([&fn, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& w : workers) w.join();
}

}  // namespace bestad
