#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace kgfeat {

/// Runs fn(chunk_index, begin, end) over [0, n) split into `threads` chunks.
/// Chunk boundaries depend only on (n, threads), so any per-chunk outputs can
/// be merged in chunk order for deterministic results.
template <typename Fn>
void parallel_chunks(std::size_t n, std::uint32_t threads, Fn&& fn) {
    if (n == 0) return;
    std::size_t nthreads = threads == 0 ? 1 : threads;
    if (nthreads > n) nthreads = n;
    if (nthreads == 1) {
        fn(0, std::size_t(0), n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    std::size_t per = n / nthreads;
    std::size_t extra = n % nthreads;
    std::size_t begin = 0;
    for (std::size_t c = 0; c < nthreads; ++c) {
        std::size_t len = per + (c < extra ? 1 : 0);
        std::size_t end = begin + len;
        pool.emplace_back([&fn, c, begin, end] { fn(c, begin, end); });
        begin = end;
    }
    for (auto& t : pool) t.join();
}

}  // namespace kgfeat
