#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>

namespace blockforge {

struct Budgets {
    std::uint64_t subspaces = 10'000'000;  // codim-s subspaces a verifier may enumerate
    std::uint64_t points = 10'000'000;     // projective points a construction may emit
    std::uint64_t cliques = 10'000'000;    // hyperedges a graph operator may emit

    /// Defaults overridden by BLOCKFORGE_BUDGET_SUBSPACES / _POINTS / _CLIQUES.
    static Budgets from_environment() {
        Budgets b;
        auto read = [](const char* name, std::uint64_t& slot) {
            if (const char* v = std::getenv(name); v != nullptr && *v != '\0') {
                char* end = nullptr;
                unsigned long long parsed = std::strtoull(v, &end, 10);
                if (end != nullptr && *end == '\0' && parsed > 0) slot = parsed;
            }
        };
        read("BLOCKFORGE_BUDGET_SUBSPACES", b.subspaces);
        read("BLOCKFORGE_BUDGET_POINTS", b.points);
        read("BLOCKFORGE_BUDGET_CLIQUES", b.cliques);
        return b;
    }
};

}  // namespace blockforge
