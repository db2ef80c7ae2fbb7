#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace dlab {

// Worker count: explicit request > DEDEKIND_LAB_THREADS > hardware concurrency.
int resolve_threads(int requested);

// Applies fn(block_begin, block_end) to fixed-size blocks of [lo, hi) and
// returns the per-block results in block order. The block geometry depends
// only on block_size, never on the thread count, so any fold over the result
// vector is byte-identical from run to run and across --threads values.
template <typename R, typename Fn>
std::vector<R> map_blocks(std::uint64_t lo, std::uint64_t hi, std::uint64_t block_size,
                          int threads, Fn&& fn) {
    std::vector<R> results;
    if (hi <= lo) return results;
    const std::uint64_t n_blocks = (hi - lo + block_size - 1) / block_size;
    results.resize(static_cast<std::size_t>(n_blocks));

    int workers = resolve_threads(threads);
    if (workers > static_cast<int>(n_blocks)) workers = static_cast<int>(n_blocks);

    auto run_block = [&](std::uint64_t bi) {
        std::uint64_t b = lo + bi * block_size;
        std::uint64_t e = b + block_size < hi ? b + block_size : hi;
        results[static_cast<std::size_t>(bi)] = fn(b, e);
    };

    if (workers <= 1) {
        for (std::uint64_t bi = 0; bi < n_blocks; ++bi) run_block(bi);
        return results;
    }

    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                std::uint64_t bi = next.fetch_add(1, std::memory_order_relaxed);
                if (bi >= n_blocks) return;
                run_block(bi);
            }
        });
    }
    for (auto& t : pool) t.join();
    return results;
}

} // namespace dlab
