#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace qmf {

// 0 = unset: falls back to QMFORGE_THREADS, then 1
void set_thread_count(std::size_t n);
std::size_t thread_count();

// f(begin, end, chunk) over contiguous chunks, one per worker; chunk order is deterministic
template <class F>
void parallel_chunks(std::size_t n, F&& f) {
    std::size_t t = thread_count();
    if (t <= 1 || n < 2 * t) {
        f(std::size_t{0}, n, std::size_t{0});
        return;
    }
    std::vector<std::thread> pool;
    std::size_t step = (n + t - 1) / t;
    for (std::size_t c = 0; c < t; ++c) {
        std::size_t b = c * step, e = std::min(n, b + step);
        if (b >= e) break;
        pool.emplace_back([&f, b, e, c] { f(b, e, c); });
    }
    for (auto& th : pool) th.join();
}

}  // namespace qmf
