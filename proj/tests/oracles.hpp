#pragma once

// Brute-force reference implementations for the tests. Nothing here calls the
// library's elimination code: spans are enumerated vector by vector and ranks are
// read off span sizes.

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

namespace oracle {

using Vec = std::vector<std::uint32_t>;

/// GF(p^m) by schoolbook polynomial arithmetic modulo `modulus` (low coefficient first).
struct NaiveField {
    std::uint32_t p, m;
    std::vector<std::uint32_t> modulus;

    std::uint32_t q() const {
        std::uint32_t r = 1;
        for (std::uint32_t i = 0; i < m; ++i) r *= p;
        return r;
    }
    std::vector<std::uint32_t> digits(std::uint32_t a) const {
        std::vector<std::uint32_t> d(m);
        for (auto& x : d) {
            x = a % p;
            a /= p;
        }
        return d;
    }
    std::uint32_t pack(const std::vector<std::uint32_t>& d) const {
        std::uint32_t r = 0;
        for (std::size_t i = d.size(); i-- > 0;) r = r * p + d[i];
        return r;
    }
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        auto x = digits(a), y = digits(b);
        for (std::uint32_t i = 0; i < m; ++i) x[i] = (x[i] + y[i]) % p;
        return pack(x);
    }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        auto x = digits(a), y = digits(b);
        std::vector<std::uint32_t> prod(2 * m, 0);
        for (std::uint32_t i = 0; i < m; ++i)
            for (std::uint32_t j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
        for (std::size_t d = prod.size(); d-- > m;) {
            const std::uint32_t c = prod[d];
            if (!c) continue;
            for (std::uint32_t i = 0; i <= m; ++i)
                prod[d - m + i] = (prod[d - m + i] + (p - c) * modulus[i] % p) % p;
        }
        prod.resize(m);
        return pack(prod);
    }
    std::uint32_t inv(std::uint32_t a) const {
        for (std::uint32_t b = 1; b < q(); ++b)
            if (mul(a, b) == 1) return b;
        return 0;
    }
};

inline Vec axpy(const NaiveField& f, std::uint32_t a, const Vec& x, Vec y) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = f.add(f.mul(a, x[i]), y[i]);
    return y;
}

/// Every vector of span(vs), by enumerating all q^|vs| coefficient tuples.
inline std::set<Vec> span(const NaiveField& f, const std::vector<Vec>& vs, std::size_t len) {
    std::set<Vec> out;
    const std::uint32_t q = f.q();
    std::vector<std::uint32_t> c(vs.size(), 0);
    while (true) {
        Vec v(len, 0);
        for (std::size_t i = 0; i < vs.size(); ++i) v = axpy(f, c[i], vs[i], v);
        out.insert(v);
        std::size_t i = 0;
        while (i < c.size() && ++c[i] == q) c[i++] = 0;
        if (i == c.size()) break;
    }
    return out;
}

/// log_q |span(vs)|.
inline std::size_t rank(const NaiveField& f, const std::vector<Vec>& vs, std::size_t len) {
    std::size_t size = span(f, vs, len).size(), r = 0;
    while (size > 1) {
        size /= f.q();
        ++r;
    }
    return r;
}

inline bool is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](auto x) { return x == 0; });
}

/// All vectors of F_q^len.
inline std::vector<Vec> all_vectors(const NaiveField& f, std::size_t len) {
    std::vector<Vec> out;
    Vec v(len, 0);
    while (true) {
        out.push_back(v);
        std::size_t i = 0;
        while (i < len && ++v[i] == f.q()) v[i++] = 0;
        if (i == len) break;
    }
    return out;
}

/// Every dim-`d` subspace of F_q^len as its full vector set, found by spanning all
/// d-tuples of vectors and keeping the d-dimensional spans.
inline std::set<std::set<Vec>> subspaces(const NaiveField& f, std::size_t len, std::size_t d) {
    auto vectors = all_vectors(f, len);
    std::set<std::set<Vec>> out;
    std::size_t target = 1;
    for (std::size_t i = 0; i < d; ++i) target *= f.q();
    std::vector<std::size_t> idx(d, 0);
    while (true) {
        std::vector<Vec> gens;
        for (auto i : idx) gens.push_back(vectors[i]);
        auto s = span(f, gens, len);
        if (s.size() == target) out.insert(std::move(s));
        std::size_t i = 0;
        while (i < d && ++idx[i] == vectors.size()) idx[i++] = 0;
        if (i == d) break;
    }
    return out;
}

/// Strong s-blocking: every (len - s)-dimensional subspace L has L & B spanning L.
inline bool strong_blocking(const NaiveField& f, const std::vector<Vec>& points, std::size_t len, std::size_t s) {
    for (const auto& l : subspaces(f, len, len - s)) {
        std::vector<Vec> inside;
        for (const auto& b : points)
            if (l.count(b)) inside.push_back(b);
        if (rank(f, inside, len) < len - s) return false;
    }
    return true;
}

inline std::set<std::size_t> support(const std::set<Vec>& space) {
    std::set<std::size_t> out;
    for (const auto& v : space)
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i]) out.insert(i);
    return out;
}

/// s-minimality of the row space of a k x n generator (rows given).
inline bool s_minimal(const NaiveField& f, const std::vector<Vec>& generator_rows, std::size_t s) {
    const std::size_t n = generator_rows[0].size();
    auto code = span(f, generator_rows, n);
    std::vector<Vec> code_vectors(code.begin(), code.end());
    std::vector<std::set<std::size_t>> supports;
    std::set<std::set<Vec>> seen;
    // s-dim subspaces of the code: spans of s-tuples of codewords
    std::size_t target = 1;
    for (std::size_t i = 0; i < s; ++i) target *= f.q();
    std::vector<std::size_t> idx(s, 0);
    while (true) {
        std::vector<Vec> gens;
        for (auto i : idx) gens.push_back(code_vectors[i]);
        auto sp = span(f, gens, n);
        if (sp.size() == target && seen.insert(sp).second) supports.push_back(support(sp));
        std::size_t i = 0;
        while (i < s && ++idx[i] == code_vectors.size()) idx[i++] = 0;
        if (i == s) break;
    }
    for (std::size_t i = 0; i < supports.size(); ++i)
        for (std::size_t j = 0; j < supports.size(); ++j)
            if (i != j && std::includes(supports[j].begin(), supports[j].end(), supports[i].begin(), supports[i].end()))
                return false;
    return true;
}

/// Exhaustive search for a proper combination of `xs` lying in the subspace given
/// as a full vector set: returns all such coefficient tuples with leading 1.
inline std::vector<Vec> proper_combinations_in(const NaiveField& f, const std::vector<Vec>& xs, const std::set<Vec>& l) {
    std::vector<Vec> out;
    const std::size_t m = xs.size(), len = xs[0].size();
    Vec a(m, 1);
    while (true) {
        Vec v(len, 0);
        for (std::size_t i = 0; i < m; ++i) v = axpy(f, a[i], xs[i], v);
        if (l.count(v)) out.push_back(a);
        std::size_t i = m;
        bool carried = true;
        while (carried && i-- > 1) {
            if (++a[i] < f.q()) carried = false;
            else a[i] = 1;
        }
        if (carried) break;
    }
    return out;
}

/// |PG(len-1, q)|.
inline std::uint64_t projective_points(std::uint32_t q, std::uint32_t len) {
    std::uint64_t c = 0;
    for (std::uint32_t i = 0; i < len; ++i) c = c * q + 1;
    return c;
}

/// Number of r-subsets of [0, n), by counting.
inline std::uint64_t count_subsets(std::uint32_t n, std::uint32_t r) {
    std::uint64_t c = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask)
        if (static_cast<std::uint32_t>(__builtin_popcountll(mask)) == r) ++c;
    return c;
}

}  // namespace oracle
