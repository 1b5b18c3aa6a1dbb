#pragma once

#include "sumset/caps.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

namespace sumset {

// Runs fn(lo, hi, chunk) over a partition of [0, n) into contiguous chunks,
// one per worker thread. Chunk boundaries depend only on n and the thread
// count, so callers reducing per-chunk results in chunk order are
// schedule-independent. The first exception thrown is rethrown.
template <class Fn>
void parallel_chunks(std::uint64_t n, Fn&& fn) {
    const std::uint64_t k = std::max<std::uint64_t>(1, std::min<std::uint64_t>(worker_threads(), n / 4096 + 1));
    if (k == 1) {
        fn(std::uint64_t{0}, n, std::size_t{0});
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(k);
    for (std::uint64_t c = 0; c < k; ++c) {
        pool.emplace_back([&, c] {
            try {
                fn(n * c / k, n * (c + 1) / k, static_cast<std::size_t>(c));
            } catch (...) {
                errors[c] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

inline std::size_t parallel_chunk_count(std::uint64_t n) {
    return static_cast<std::size_t>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(worker_threads(), n / 4096 + 1)));
}

// First i in [0, n) with pred(i), chunked over worker threads.
template <class Pred>
std::optional<std::uint64_t> first_index(std::uint64_t n, Pred&& pred) {
    std::atomic<std::uint64_t> found{n};
    parallel_chunks(n, [&](std::uint64_t lo, std::uint64_t hi, std::size_t) {
        for (std::uint64_t i = lo; i < hi && i < found.load(std::memory_order_relaxed); ++i) {
            if (pred(i)) {
                std::uint64_t cur = found.load();
                while (i < cur && !found.compare_exchange_weak(cur, i)) {
                }
                return;
            }
        }
    });
    if (found.load() == n) return std::nullopt;
    return found.load();
}

} // namespace sumset
