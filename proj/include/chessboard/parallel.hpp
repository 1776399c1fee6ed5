#pragma once

#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace chessboard {

// Thread count resolution: an explicit request wins, then the
// CHESSBOARD_BISECT_THREADS environment variable, then the hardware.
inline int resolve_threads(int requested) {
    if (requested >= 1) return requested;
    if (const char* env = std::getenv("CHESSBOARD_BISECT_THREADS")) {
        const int parsed = std::atoi(env);
        if (parsed >= 1) return parsed;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(i) for i in [0, count) on up to `threads` workers pulling from a
// shared counter. Exceptions inside fn terminate; callers keep their own
// error channels.
inline void parallel_for(std::size_t count, int threads,
                         const std::function<void(std::size_t)>& fn) {
    if (count == 0) return;
    const std::size_t workers =
        std::min<std::size_t>(count, static_cast<std::size_t>(threads < 1 ? 1 : threads));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace chessboard
