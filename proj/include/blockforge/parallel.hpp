#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <utility>
#include <vector>

namespace blockforge {

/// Contiguous split of [0, total) into `parts` ranges; the first total % parts get one extra.
inline std::vector<std::pair<std::uint64_t, std::uint64_t>> shard_ranges(std::uint64_t total,
                                                                         std::uint64_t parts) {
    parts = std::max<std::uint64_t>(1, parts);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
    out.reserve(parts);
    const std::uint64_t base = total / parts, extra = total % parts;
    std::uint64_t lo = 0;
    for (std::uint64_t i = 0; i < parts; ++i) {
        std::uint64_t hi = lo + base + (i < extra ? 1 : 0);
        out.emplace_back(lo, hi);
        lo = hi;
    }
    return out;
}

/// Runs fn(shard_index) for every shard on its own thread; rethrows the first exception.
template <class Fn>
void run_shards(std::size_t shards, Fn&& fn) {
    if (shards <= 1) {
        fn(std::size_t{0});
        return;
    }
    std::vector<std::exception_ptr> errors(shards);
    std::vector<std::thread> pool;
    pool.reserve(shards);
    for (std::size_t i = 0; i < shards; ++i) {
        pool.emplace_back([&, i] {
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace blockforge
