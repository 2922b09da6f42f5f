#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <functional>
#include <algorithm>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "budget.hpp"
#include "error.hpp"
#include "matrix.hpp"

namespace blockforge::linalg {

using BigInt = boost::multiprecision::cpp_int;

/// A subspace of F_q^k held as the RREF of a basis. Two bases of the same
/// subspace produce identical objects, so == is subspace equality.
class SubspaceBasis {
public:
    SubspaceBasis() = default;

    static SubspaceBasis from_rows(const MatrixGF& m) {
        auto [r, rk, pivots] = rref(m);
        SubspaceBasis out;
        out.ambient_ = m.cols();
        out.pivots_ = std::move(pivots);
        MatrixGF basis(m.field(), rk, m.cols());
        for (std::size_t i = 0; i < rk; ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) basis(i, j) = r(i, j);
        out.basis_ = std::move(basis);
        return out;
    }

    /// Wraps a matrix already known to be in RREF with full row rank.
    static SubspaceBasis from_rref(MatrixGF rref_basis, std::vector<std::uint32_t> pivots) {
        SubspaceBasis out;
        out.ambient_ = rref_basis.cols();
        out.basis_ = std::move(rref_basis);
        out.pivots_ = std::move(pivots);
        return out;
    }

    const Field& field() const noexcept { return basis_.field(); }
    std::size_t ambient_dim() const noexcept { return ambient_; }
    std::size_t dim() const noexcept { return basis_.rows(); }
    std::size_t codim() const noexcept { return ambient_ - basis_.rows(); }
    const MatrixGF& basis() const noexcept { return basis_; }
    const std::vector<std::uint32_t>& pivots() const noexcept { return pivots_; }

    bool contains(std::span<const Scalar> v) const {
        // Reduce v by the RREF rows using pivot coordinates; v is inside iff nothing is left.
        const Field& f = field();
        Vector w(v.begin(), v.end());
        for (std::size_t i = 0; i < dim(); ++i) {
            const Scalar c = w[pivots_[i]];
            if (c == 0) continue;
            const Scalar factor = f.neg(c);
            for (std::size_t j = 0; j < ambient_; ++j) w[j] = f.fma(factor, basis_(i, j), w[j]);
        }
        return is_zero_vector(w);
    }

    friend bool operator==(const SubspaceBasis& a, const SubspaceBasis& b) {
        return a.ambient_ == b.ambient_ && a.pivots_ == b.pivots_ && a.basis_ == b.basis_;
    }

private:
    std::size_t ambient_ = 0;
    MatrixGF basis_;
    std::vector<std::uint32_t> pivots_;
};

inline SubspaceBasis subspace_from_rows(const MatrixGF& m) { return SubspaceBasis::from_rows(m); }

/// Number of dim-s subspaces of F_q^k: prod_{i<s} (q^{k-i} - 1) / (q^{i+1} - 1).
inline BigInt gaussian_binomial(std::uint32_t k, std::uint32_t s, std::uint64_t q) {
    if (s > k) throw std::invalid_argument("gaussian_binomial: s > k");
    BigInt num = 1, den = 1;
    for (std::uint32_t i = 0; i < s; ++i) {
        num *= boost::multiprecision::pow(BigInt(q), k - i) - 1;
        den *= boost::multiprecision::pow(BigInt(q), i + 1) - 1;
    }
    return num / den;
}

/// Gaussian binomial as a uint64, or nullopt when it does not fit.
inline std::optional<std::uint64_t> gaussian_binomial_u64(std::uint32_t k, std::uint32_t s, std::uint64_t q) {
    BigInt g = gaussian_binomial(k, s, q);
    if (g > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
    return static_cast<std::uint64_t>(g);
}

/// s x k matrix Q (RREF) whose null space is exactly L.
inline MatrixGF quotient_map(const SubspaceBasis& l) {
    if (l.codim() == 0) throw std::invalid_argument("quotient_map: subspace has codimension 0");
    MatrixGF basis = l.basis();
    if (basis.rows() == 0) return MatrixGF::identity(l.field(), l.ambient_dim());
    return rref(null_space(basis)).matrix;
}

/// Enumerates every dim-`dim` subspace of F_q^k as an RREF matrix, ordered
/// lexicographically by pivot set and then by the free entries read as a base-q
/// counter (last free entry fastest). Global indices allow contiguous sharding.
class SubspaceEnumerator {
public:
    SubspaceEnumerator(Field f, std::uint32_t k, std::uint32_t dim) : field_(std::move(f)), k_(k), dim_(dim) {
        if (dim > k) throw std::invalid_argument("enumerate_subspaces: dimension exceeds ambient dimension");
        std::vector<std::uint32_t> piv(dim);
        for (std::uint32_t i = 0; i < dim; ++i) piv[i] = i;
        while (true) {
            PivotBlock block;
            block.pivots = piv;
            std::vector<bool> is_pivot(k, false);
            for (auto p : piv) is_pivot[p] = true;
            for (std::uint32_t r = 0; r < dim; ++r)
                for (std::uint32_t c = piv[r] + 1; c < k; ++c)
                    if (!is_pivot[c]) block.free.push_back({r, c});
            block.first = total_;
            std::uint64_t count = 1;
            for (std::size_t i = 0; i < block.free.size(); ++i) {
                if (count > std::numeric_limits<std::uint64_t>::max() / field_.q())
                    throw BudgetExceeded("subspaces", std::numeric_limits<std::uint64_t>::max(),
                                         "enumerate_subspaces: count overflows 64 bits");
                count *= field_.q();
            }
            block.count = count;
            total_ += count;
            blocks_.push_back(std::move(block));
            // next pivot combination
            int i = static_cast<int>(dim) - 1;
            while (i >= 0 && piv[i] == k - dim + i) --i;
            if (i < 0) break;
            ++piv[i];
            for (std::uint32_t j = i + 1; j < dim; ++j) piv[j] = piv[j - 1] + 1;
        }
    }

    std::uint64_t count() const noexcept { return total_; }
    std::uint32_t ambient_dim() const noexcept { return k_; }
    std::uint32_t dim() const noexcept { return dim_; }

    /// Calls fn(index, rref, pivots) for indices in [lo, hi); stops early when fn returns false.
    template <class Fn>
    void for_each(std::uint64_t lo, std::uint64_t hi, Fn&& fn) const {
        hi = std::min(hi, total_);
        if (lo >= hi) return;
        const std::uint32_t q = field_.q();
        for (const auto& block : blocks_) {
            const std::uint64_t b_lo = block.first, b_hi = block.first + block.count;
            if (b_hi <= lo || b_lo >= hi) continue;
            MatrixGF m(field_, dim_, k_);
            for (std::uint32_t r = 0; r < dim_; ++r) m(r, block.pivots[r]) = 1;
            const std::uint64_t start = std::max(lo, b_lo) - b_lo;
            const std::uint64_t stop = std::min(hi, b_hi) - b_lo;
            // decode `start` into the free-entry counter
            std::vector<Scalar> digits(block.free.size(), 0);
            std::uint64_t x = start;
            for (std::size_t i = block.free.size(); i-- > 0;) {
                digits[i] = static_cast<Scalar>(x % q);
                x /= q;
            }
            for (std::uint64_t local = start; local < stop; ++local) {
                for (std::size_t i = 0; i < block.free.size(); ++i)
                    m(block.free[i].row, block.free[i].col) = digits[i];
                if (!fn(block.first + local, static_cast<const MatrixGF&>(m), block.pivots)) return;
                for (std::size_t i = block.free.size(); i-- > 0;) {
                    if (++digits[i] < q) break;
                    digits[i] = 0;
                }
            }
        }
    }

    template <class Fn>
    void for_each(Fn&& fn) const {
        for_each(0, total_, std::forward<Fn>(fn));
    }

private:
    struct FreeSlot {
        std::uint32_t row, col;
    };
    struct PivotBlock {
        std::vector<std::uint32_t> pivots;
        std::vector<FreeSlot> free;
        std::uint64_t first = 0, count = 0;
    };

    Field field_;
    std::uint32_t k_, dim_;
    std::uint64_t total_ = 0;
    std::vector<PivotBlock> blocks_;
};

/// Refuses when the number of codim-`codim` subspaces exceeds the budget.
inline SubspaceEnumerator checked_enumerator(const Field& f, std::uint32_t k, std::uint32_t dim,
                                             std::uint64_t budget) {
    if (dim > k) throw std::invalid_argument("enumerate_subspaces: dimension exceeds ambient dimension");
    auto count = gaussian_binomial_u64(k, dim, f.q());
    if (!count || *count > budget)
        throw BudgetExceeded("subspaces", budget,
                             "subspace enumeration of " + gaussian_binomial(k, dim, f.q()).str() + " subspaces");
    return SubspaceEnumerator(f, k, dim);
}

/// Every codimension-`codim` subspace of F_q^k, each exactly once, in canonical order.
inline std::vector<SubspaceBasis> enumerate_subspaces(const Field& f, std::uint32_t k, std::uint32_t codim,
                                                      std::uint64_t budget = Budgets{}.subspaces) {
    if (codim > k) throw std::invalid_argument("enumerate_subspaces: codim exceeds ambient dimension");
    auto e = checked_enumerator(f, k, k - codim, budget);
    std::vector<SubspaceBasis> out;
    out.reserve(e.count());
    e.for_each([&](std::uint64_t, const MatrixGF& m, const std::vector<std::uint32_t>& piv) {
        out.push_back(SubspaceBasis::from_rref(m, piv));
        return true;
    });
    return out;
}

}  // namespace blockforge::linalg
