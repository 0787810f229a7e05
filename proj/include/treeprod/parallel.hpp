#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace treeprod {

// Runs fn(worker, begin, end) on contiguous chunks of [0, n). Chunks are fixed by
// (n, jobs) so per-worker results merged in worker order are deterministic.
template <class Fn>
void parallel_chunks(std::size_t n, unsigned jobs, Fn&& fn) {
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (jobs == 1) {
        fn(0u, std::size_t{0}, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (unsigned w = 0; w < jobs; ++w) {
        std::size_t b = n * w / jobs, e = n * (w + 1) / jobs;
        pool.emplace_back([&fn, w, b, e] { fn(w, b, e); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace treeprod
