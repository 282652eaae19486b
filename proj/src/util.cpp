#include "qmforge/util.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace qmf {

namespace {
std::atomic<std::size_t> g_threads{0};
}

void set_thread_count(std::size_t n) { g_threads = n; }

std::size_t thread_count() {
    if (std::size_t n = g_threads.load()) return n;
    if (const char* env = std::getenv("QMFORGE_THREADS")) {
        try {
            long v = std::stol(env);
            if (v > 0) return static_cast<std::size_t>(v);
        } catch (...) {
        }
    }
    return 1;
}

}  // namespace qmf
