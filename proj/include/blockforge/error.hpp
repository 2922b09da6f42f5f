#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace blockforge {

/// Raised when an enumeration or construction would exceed a configured cap.
/// Carries the budget name so the CLI can report which limit was hit.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(std::string budget, std::uint64_t limit, const std::string& what)
        : std::runtime_error(what + " (budget '" + budget + "' = " + std::to_string(limit) + ")"),
          budget_(std::move(budget)),
          limit_(limit) {}

    const std::string& budget() const noexcept { return budget_; }
    std::uint64_t limit() const noexcept { return limit_; }

private:
    std::string budget_;
    std::uint64_t limit_;
};

/// An internal postcondition failed. Seeing one of these means a bug, not bad input.
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace blockforge
