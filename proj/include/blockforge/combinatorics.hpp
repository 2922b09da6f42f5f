#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

namespace blockforge {

/// C(n, r), saturating at UINT64_MAX.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t r) {
    if (r > n) return 0;
    r = std::min(r, n - r);
    unsigned __int128 acc = 1;
    for (std::uint64_t i = 1; i <= r; ++i) {
        acc = acc * (n - r + i) / i;
        if (acc > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
    }
    return static_cast<std::uint64_t>(acc);
}

/// Visits every r-subset of [0, n) in lexicographic order; fn returns false to stop.
/// Returns false when stopped early.
template <class Fn>
bool for_each_combination(std::uint32_t n, std::uint32_t r, Fn&& fn) {
    if (r > n) return true;
    std::vector<std::uint32_t> c(r);
    for (std::uint32_t i = 0; i < r; ++i) c[i] = i;
    while (true) {
        if (!fn(static_cast<const std::vector<std::uint32_t>&>(c))) return false;
        int i = static_cast<int>(r) - 1;
        while (i >= 0 && c[i] == n - r + static_cast<std::uint32_t>(i)) --i;
        if (i < 0) return true;
        ++c[i];
        for (std::uint32_t j = i + 1; j < r; ++j) c[j] = c[j - 1] + 1;
    }
}

}  // namespace blockforge
