#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace zen {

/// Worker cap: min(hardware_concurrency, ZEN_THREADS). ZEN_THREADS unset or 0
/// means "no extra cap". Always at least 1.
inline unsigned thread_budget() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("ZEN_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v > 0) hw = std::min<unsigned>(hw, static_cast<unsigned>(v));
    }
    return hw;
}

/// Run fn(chunk_index, begin, end) over a fixed partition of [0, n) into
/// `chunks` pieces. The partition depends only on (n, chunks), so per-chunk
/// results can be merged in chunk order and the total is identical no matter
/// how many threads actually ran.
inline void parallel_chunks(std::uint64_t n, std::size_t chunks,
                            const std::function<void(std::size_t, std::uint64_t, std::uint64_t)>& fn) {
    if (chunks == 0) chunks = 1;
    unsigned workers = std::min<unsigned>(thread_budget(), static_cast<unsigned>(chunks));
    auto chunk_range = [&](std::size_t c) {
        std::uint64_t lo = n * c / chunks;
        std::uint64_t hi = n * (c + 1) / chunks;
        return std::pair<std::uint64_t, std::uint64_t>(lo, hi);
    };
    if (workers <= 1) {
        for (std::size_t c = 0; c < chunks; ++c) {
            auto [lo, hi] = chunk_range(c);
            fn(c, lo, hi);
        }
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::atomic<std::size_t> next{0};
    for (unsigned t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t c = next.fetch_add(1);
                if (c >= chunks) return;
                auto [lo, hi] = chunk_range(c);
                fn(c, lo, hi);
            }
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace zen
