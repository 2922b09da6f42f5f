#pragma once

// Codes from point sets and the s-minimality check: the supports of the
// s-dimensional subcodes must form an antichain.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "budget.hpp"
#include "construct.hpp"
#include "error.hpp"
#include "matrix.hpp"
#include "subspace.hpp"
#include "verify.hpp"

namespace blockforge::mincode {

using construct::BlockingSet;
using gf::Field;
using linalg::MatrixGF;
using linalg::Vector;

/// Row space of a full-rank k x n generator.
class LinearCode {
public:
    explicit LinearCode(MatrixGF generator) : g_(std::move(generator)) {
        if (linalg::rank(g_) != g_.rows())
            throw std::invalid_argument("linear code: generator is rank deficient (rank " +
                                        std::to_string(linalg::rank(g_)) + " < " + std::to_string(g_.rows()) + ")");
    }

    const Field& field() const noexcept { return g_.field(); }
    const MatrixGF& generator() const noexcept { return g_; }
    std::uint32_t n() const noexcept { return static_cast<std::uint32_t>(g_.cols()); }
    std::uint32_t k() const noexcept { return static_cast<std::uint32_t>(g_.rows()); }

    /// Minimum nonzero codeword weight, by enumeration of projective messages.
    std::optional<std::uint32_t> minimum_distance(std::uint64_t budget = Budgets{}.subspaces) const {
        return supply::min_distance_exhaustive(g_, budget);
    }

private:
    MatrixGF g_;
};

/// Generator whose columns are the points of B.
inline LinearCode blocking_to_code(const BlockingSet& b) {
    MatrixGF rows = b.as_rows();
    if (linalg::rank(rows) < b.k()) throw std::invalid_argument("blocking_to_code: points do not span F_q^k");
    return LinearCode(rows.transpose());
}

using Support = std::vector<std::uint64_t>;  // bitset over coordinates

namespace detail {

inline Support support_bits(const MatrixGF& rows) {
    Support bits((rows.cols() + 63) / 64, 0);
    for (std::size_t r = 0; r < rows.rows(); ++r)
        for (std::size_t c = 0; c < rows.cols(); ++c)
            if (rows(r, c)) bits[c / 64] |= std::uint64_t{1} << (c % 64);
    return bits;
}

inline bool subset_of(const Support& a, const Support& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] & ~b[i]) return false;
    return true;
}

}  // namespace detail

/// Coordinates where some vector of the row space of `basis` is nonzero.
inline std::vector<std::uint32_t> support(const MatrixGF& basis) {
    MatrixGF reduced = linalg::rref(basis).matrix;
    std::vector<std::uint32_t> out;
    for (std::size_t c = 0; c < reduced.cols(); ++c)
        for (std::size_t r = 0; r < reduced.rows(); ++r)
            if (reduced(r, c)) {
                out.push_back(static_cast<std::uint32_t>(c));
                break;
            }
    return out;
}

struct ViolatingPair {
    MatrixGF x;  // s x n basis, supp(x) within supp(y)
    MatrixGF y;
    std::vector<std::uint32_t> support_x, support_y;
};

struct MinimalityReport {
    std::uint32_t s = 0;
    std::uint64_t subspaces_examined = 0;
    bool passed = false;
    std::optional<ViolatingPair> violating_pair;
};

/// Enumerates the s-dimensional subspaces of the message space, maps them through
/// G and checks pairwise support incomparability. The first pair (i < j, either
/// direction) in enumeration order is reported.
inline MinimalityReport is_s_minimal(const LinearCode& c, std::uint32_t s, std::uint64_t budget = 10'000) {
    if (s < 1 || s > c.k()) throw std::invalid_argument("is_s_minimal: need 1 <= s <= k");
    auto en = linalg::checked_enumerator(c.field(), c.k(), s, budget);
    std::vector<MatrixGF> bases;
    std::vector<Support> supports;
    bases.reserve(en.count());
    supports.reserve(en.count());
    en.for_each([&](std::uint64_t, const MatrixGF& m, const std::vector<std::uint32_t>&) {
        MatrixGF x = linalg::multiply(m, c.generator());
        supports.push_back(detail::support_bits(x));
        bases.push_back(std::move(x));
        return true;
    });

    MinimalityReport rep;
    rep.s = s;
    rep.subspaces_examined = bases.size();
    rep.passed = true;
    for (std::size_t i = 0; i < supports.size() && rep.passed; ++i)
        for (std::size_t j = i + 1; j < supports.size(); ++j) {
            std::optional<std::pair<std::size_t, std::size_t>> hit;
            if (detail::subset_of(supports[i], supports[j])) hit = {i, j};
            else if (detail::subset_of(supports[j], supports[i])) hit = {j, i};
            if (hit) {
                rep.passed = false;
                rep.violating_pair = ViolatingPair{bases[hit->first], bases[hit->second], support(bases[hit->first]),
                                                   support(bases[hit->second])};
                break;
            }
        }
    return rep;
}

struct DualityResult {
    bool strong_blocking = false;
    bool s_minimal = false;
};

/// Runs both exhaustive oracles on the same column set; they must agree.
inline DualityResult duality_check(const MatrixGF& columns, std::uint32_t s, std::uint64_t budget = 10'000) {
    supply::PointSupply checked(columns, supply::Provenance::file);  // nonzero, projectively distinct
    std::vector<Vector> pts;
    for (std::size_t c = 0; c < columns.cols(); ++c) pts.push_back(columns.column(c));
    BlockingSet b(columns.field(), static_cast<std::uint32_t>(columns.rows()), std::move(pts));
    LinearCode code(columns);
    DualityResult out;
    verify::VerifyOptions opt;
    opt.budget = budget;
    out.strong_blocking = verify::is_strong_blocking(b, s, opt).passed;
    out.s_minimal = is_s_minimal(code, s, budget).passed;
    if (out.strong_blocking != out.s_minimal)
        throw ConsistencyError("duality_check: strong blocking (" + std::string(out.strong_blocking ? "true" : "false") +
                               ") disagrees with s-minimality (" + (out.s_minimal ? "true" : "false") + ")");
    return out;
}

}  // namespace blockforge::mincode
