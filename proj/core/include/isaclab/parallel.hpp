// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <atomic>
#include <cstdlib>
#include <cstddef>
#include <functional>
#include <span>
#include <thread>
#include <vector>

namespace isaclab {

/// Worker cap: min(hardware_concurrency, ISAC_LAB_THREADS if set), at least 1.
inline unsigned max_threads() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("ISAC_LAB_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1 && static_cast<unsigned>(cap) < hw) hw = static_cast<unsigned>(cap);
    }
    return hw;
}

/// Runs f(block_index, begin, end) over [0, n) split into fixed-size blocks.
///
/// The block layout depends only on (n, block_size), never on the worker
/// count, so per-block results are bit-identical under any parallelism.
/// Each block index is claimed by exactly one worker.
inline void parallel_blocks(std::size_t n, std::size_t block_size,
                            const std::function<void(std::size_t, std::size_t, std::size_t)>& f) {
    if (n == 0) return;
    if (block_size == 0) block_size = 1;
    const std::size_t n_blocks = (n + block_size - 1) / block_size;
    const unsigned workers = static_cast<unsigned>(
        std::min<std::size_t>(max_threads(), n_blocks));
    if (workers <= 1) {
        for (std::size_t b = 0; b < n_blocks; ++b)
            f(b, b * block_size, std::min(n, (b + 1) * block_size));
        return;
    }
    std::atomic<std::size_t> next{0};
    auto run = [&] {
        for (;;) {
            const std::size_t b = next.fetch_add(1);
            if (b >= n_blocks) return;
            f(b, b * block_size, std::min(n, (b + 1) * block_size));
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (unsigned t = 1; t < workers; ++t) pool.emplace_back(run);
    run();
    for (auto& t : pool) t.join();
}

/// Pairwise (cascade) summation over a fixed-order sequence. Deterministic
/// and much better conditioned than naive left-to-right accumulation.
inline double pairwise_sum(std::span<const double> xs) {
    const std::size_t n = xs.size();
    if (n == 0) return 0.0;
    if (n <= 8) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(xs.subspan(0, half)) + pairwise_sum(xs.subspan(half));
}

} // namespace isaclab
