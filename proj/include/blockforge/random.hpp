#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

namespace blockforge {

// std::uniform_int_distribution is implementation-defined, so seeded runs would
// differ between standard libraries. These helpers draw from the raw engine only.
using Rng = std::mt19937_64;

inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = Rng::max() - (Rng::max() % bound);
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

inline double uniform_unit(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// A uniformly random `size`-subset of [0, n), sorted.
inline std::vector<std::uint32_t> random_subset(Rng& rng, std::uint32_t n, std::uint32_t size) {
    std::vector<std::uint32_t> pool(n);
    for (std::uint32_t i = 0; i < n; ++i) pool[i] = i;
    for (std::uint32_t i = 0; i < size && i < n; ++i) {
        auto j = i + static_cast<std::uint32_t>(uniform_below(rng, n - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(std::min(size, n));
    std::sort(pool.begin(), pool.end());
    return pool;
}

template <class T>
void shuffle(Rng& rng, std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
        auto j = static_cast<std::size_t>(uniform_below(rng, i));
        std::swap(v[i - 1], v[j]);
    }
}

}  // namespace blockforge
