#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gf.hpp"

namespace blockforge::linalg {

using gf::Field;
using gf::Scalar;
using Vector = std::vector<Scalar>;

/// Dense row-major matrix over a finite field.
class MatrixGF {
public:
    MatrixGF() = default;
    MatrixGF(Field field, std::size_t rows, std::size_t cols)
        : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}
    MatrixGF(Field field, std::size_t rows, std::size_t cols, std::vector<Scalar> data)
        : field_(std::move(field)), rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != rows_ * cols_) throw std::invalid_argument("matrix: entry count does not match dimensions");
        for (auto v : data_)
            if (!field_.contains(v)) throw std::invalid_argument("matrix: entry outside field");
    }

    static MatrixGF identity(Field field, std::size_t n) {
        MatrixGF out(std::move(field), n, n);
        for (std::size_t i = 0; i < n; ++i) out(i, i) = 1;
        return out;
    }
    static MatrixGF from_rows(Field field, const std::vector<Vector>& rows, std::size_t cols) {
        MatrixGF out(std::move(field), rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw std::invalid_argument("matrix: ragged rows");
            for (std::size_t j = 0; j < cols; ++j) {
                if (!out.field_.contains(rows[i][j])) throw std::invalid_argument("matrix: entry outside field");
                out(i, j) = rows[i][j];
            }
        }
        return out;
    }

    const Field& field() const noexcept { return field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    const std::vector<Scalar>& data() const noexcept { return data_; }

    Scalar& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    Scalar operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

    std::span<const Scalar> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }
    std::span<Scalar> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
    Vector row_vector(std::size_t r) const { return {data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_}; }
    Vector column(std::size_t c) const {
        Vector out(rows_);
        for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
        return out;
    }

    MatrixGF transpose() const {
        MatrixGF out(field_, cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
        return out;
    }

    MatrixGF select_rows(std::span<const std::uint32_t> idx) const {
        MatrixGF out(field_, idx.size(), cols_);
        for (std::size_t i = 0; i < idx.size(); ++i)
            for (std::size_t c = 0; c < cols_; ++c) out(i, c) = (*this)(idx[i], c);
        return out;
    }
    MatrixGF select_cols(std::span<const std::uint32_t> idx) const {
        MatrixGF out(field_, rows_, idx.size());
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t i = 0; i < idx.size(); ++i) out(r, i) = (*this)(r, idx[i]);
        return out;
    }

    bool is_zero() const noexcept {
        for (auto v : data_)
            if (v != 0) return false;
        return true;
    }

    friend bool operator==(const MatrixGF& a, const MatrixGF& b) {
        return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    Field field_;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Scalar> data_;
};

inline void require_same_field(const Field& a, const Field& b) {
    if (!(a == b)) throw std::invalid_argument("linalg: operands over different fields");
}

inline MatrixGF multiply(const MatrixGF& a, const MatrixGF& b) {
    require_same_field(a.field(), b.field());
    if (a.cols() != b.rows())
        throw std::invalid_argument("linalg: dimension mismatch " + std::to_string(a.cols()) + " vs " +
                                    std::to_string(b.rows()));
    const Field& f = a.field();
    MatrixGF out(f, a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t l = 0; l < a.cols(); ++l) {
            const Scalar x = a(i, l);
            if (x == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = f.fma(x, b(l, j), out(i, j));
        }
    return out;
}

/// M * v for a column vector v.
inline Vector apply(const MatrixGF& m, std::span<const Scalar> v) {
    if (v.size() != m.cols()) throw std::invalid_argument("linalg: vector length mismatch");
    const Field& f = m.field();
    Vector out(m.rows(), 0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Scalar acc = 0;
        for (std::size_t j = 0; j < m.cols(); ++j) acc = f.fma(m(i, j), v[j], acc);
        out[i] = acc;
    }
    return out;
}

inline bool is_zero_vector(std::span<const Scalar> v) noexcept {
    for (auto x : v)
        if (x != 0) return false;
    return true;
}

/// Scales v so its first nonzero coordinate is 1 (projective normal form). Zero stays zero.
inline void normalize(const Field& f, std::span<Scalar> v) {
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) {
            if (v[i] == 1) return;
            const Scalar s = f.inv(v[i]);
            for (std::size_t j = i; j < v.size(); ++j) v[j] = f.mul(s, v[j]);
            return;
        }
}

struct RrefResult {
    MatrixGF matrix;
    std::size_t rank = 0;
    std::vector<std::uint32_t> pivots;
};

/// Reduced row echelon form. Zero rows are kept at the bottom.
inline RrefResult rref(MatrixGF m) {
    const Field f = m.field();
    std::vector<std::uint32_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t piv = r;
        while (piv < m.rows() && m(piv, c) == 0) ++piv;
        if (piv == m.rows()) continue;
        if (piv != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
        const Scalar s = f.inv(m(r, c));
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = f.mul(s, m(r, j));
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == 0) continue;
            const Scalar factor = f.neg(m(i, c));
            for (std::size_t j = c; j < m.cols(); ++j) m(i, j) = f.fma(factor, m(r, j), m(i, j));
        }
        pivots.push_back(static_cast<std::uint32_t>(c));
        ++r;
    }
    return {std::move(m), r, std::move(pivots)};
}

namespace detail {

/// Rank over GF(2) with rows packed into 64-bit words.
inline std::size_t rank_gf2_packed(const MatrixGF& m) {
    const std::size_t words = (m.cols() + 63) / 64;
    std::vector<std::uint64_t> bits(m.rows() * words, 0);
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (m(r, c)) bits[r * words + c / 64] |= std::uint64_t{1} << (c % 64);
    std::size_t rank = 0;
    for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
        const std::size_t w = c / 64;
        const std::uint64_t mask = std::uint64_t{1} << (c % 64);
        std::size_t piv = rank;
        while (piv < m.rows() && !(bits[piv * words + w] & mask)) ++piv;
        if (piv == m.rows()) continue;
        if (piv != rank)
            for (std::size_t j = 0; j < words; ++j) std::swap(bits[piv * words + j], bits[rank * words + j]);
        for (std::size_t i = rank + 1; i < m.rows(); ++i)
            if (bits[i * words + w] & mask)
                for (std::size_t j = w; j < words; ++j) bits[i * words + j] ^= bits[rank * words + j];
        ++rank;
    }
    return rank;
}

}  // namespace detail

inline std::size_t rank_generic(const MatrixGF& m) { return rref(m).rank; }

inline std::size_t rank(const MatrixGF& m) {
    if (m.field().valid() && m.field().q() == 2) return detail::rank_gf2_packed(m);
    return rank_generic(m);
}

/// rank(M * N); throws on inner-dimension mismatch.
inline std::size_t rank_product(const MatrixGF& m, const MatrixGF& n) { return rank(multiply(m, n)); }

/// Basis (as rows) of {x : M x = 0}.
inline MatrixGF null_space(const MatrixGF& m) {
    const Field& f = m.field();
    auto [r, rk, pivots] = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    MatrixGF out(f, m.cols() - rk, m.cols());
    std::size_t row = 0;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        out(row, free) = 1;
        for (std::size_t i = 0; i < rk; ++i) out(row, pivots[i]) = f.neg(r(i, free));
        ++row;
    }
    return out;
}

/// Incrementally maintained echelon basis; reports whether each new vector grew the span.
class IncrementalBasis {
public:
    IncrementalBasis(Field f, std::size_t dim) : field_(std::move(f)), dim_(dim) {}

    std::size_t rank() const noexcept { return pivots_.size(); }

    bool add(std::span<const Scalar> v) {
        scratch_.assign(v.begin(), v.end());
        for (std::size_t i = 0; i < pivots_.size(); ++i) {
            const Scalar c = scratch_[pivots_[i]];
            if (c == 0) continue;
            const Scalar factor = field_.neg(c);
            const Scalar* row = rows_.data() + i * dim_;
            for (std::size_t j = pivots_[i]; j < dim_; ++j) scratch_[j] = field_.fma(factor, row[j], scratch_[j]);
        }
        std::size_t lead = 0;
        while (lead < dim_ && scratch_[lead] == 0) ++lead;
        if (lead == dim_) return false;
        const Scalar s = field_.inv(scratch_[lead]);
        for (std::size_t j = lead; j < dim_; ++j) scratch_[j] = field_.mul(s, scratch_[j]);
        rows_.insert(rows_.end(), scratch_.begin(), scratch_.end());
        pivots_.push_back(lead);
        return true;
    }

private:
    Field field_;
    std::size_t dim_;
    std::vector<Scalar> rows_;
    std::vector<std::size_t> pivots_;
    std::vector<Scalar> scratch_;
};

}  // namespace blockforge::linalg
