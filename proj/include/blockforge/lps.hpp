#pragma once

// Lubotzky-Phillips-Sarnak Ramanujan graphs X^{p,q}.
//
// Generators are the p+1 integer solutions of a^2+b^2+c^2+d^2 = p with a odd and
// positive and b, c, d even, mapped to [[a+bi, c+di], [-c+di, a-bi]] over GF(q)
// with i^2 = -1. The graph is the connected component of the identity in the
// Cayley graph of PGL_2(F_q); that component is PSL_2(F_q) when p is a quadratic
// residue mod q and all of PGL_2(F_q) (bipartite) otherwise.

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "gf.hpp"
#include "graph.hpp"

namespace blockforge::expander {

namespace detail {

using Mat2 = std::array<std::uint32_t, 4>;  // row-major, entries mod q

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    b %= m;
    while (e) {
        if (e & 1) r = r * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return r;
}

inline Mat2 mat_mul(const Mat2& x, const Mat2& y, std::uint64_t q) {
    return {static_cast<std::uint32_t>((std::uint64_t{x[0]} * y[0] + std::uint64_t{x[1]} * y[2]) % q),
            static_cast<std::uint32_t>((std::uint64_t{x[0]} * y[1] + std::uint64_t{x[1]} * y[3]) % q),
            static_cast<std::uint32_t>((std::uint64_t{x[2]} * y[0] + std::uint64_t{x[3]} * y[2]) % q),
            static_cast<std::uint32_t>((std::uint64_t{x[2]} * y[1] + std::uint64_t{x[3]} * y[3]) % q)};
}

/// Projective normal form: first nonzero entry scaled to 1.
inline Mat2 normalize(Mat2 x, std::uint64_t q) {
    for (auto v : x)
        if (v != 0) {
            const std::uint64_t s = powmod(v, q - 2, q);
            for (auto& e : x) e = static_cast<std::uint32_t>(e * s % q);
            break;
        }
    return x;
}

inline std::uint64_t encode(const Mat2& x, std::uint64_t q) {
    return ((std::uint64_t{x[0]} * q + x[1]) * q + x[2]) * q + x[3];
}

}  // namespace detail

inline bool is_quadratic_residue(std::uint64_t a, std::uint64_t p) {
    a %= p;
    return a != 0 && detail::powmod(a, (p - 1) / 2, p) == 1;
}

/// Quadruples (a, b, c, d) with a^2+b^2+c^2+d^2 = p, a > 0 odd, b, c, d even.
inline std::vector<std::array<int, 4>> lps_generators(std::uint32_t p) {
    std::vector<std::array<int, 4>> out;
    const int bound = static_cast<int>(std::sqrt(static_cast<double>(p))) + 1;
    for (int a = 1; a <= bound; a += 2)
        for (int b = -bound; b <= bound; ++b)
            for (int c = -bound; c <= bound; ++c)
                for (int d = -bound; d <= bound; ++d) {
                    if ((b & 1) || (c & 1) || (d & 1)) continue;
                    if (a * a + b * b + c * c + d * d == static_cast<int>(p)) out.push_back({a, b, c, d});
                }
    return out;
}

/// X^{p,q}: a (p+1)-regular Ramanujan graph; vertex 0 is the identity.
inline Graph lps_graph(std::uint32_t p, std::uint32_t q) {
    if (!gf::detail::is_prime(p) || !gf::detail::is_prime(q))
        throw std::invalid_argument("lps_graph: p and q must be prime");
    if (p == q) throw std::invalid_argument("lps_graph: p and q must differ");
    if (p % 4 != 1) throw std::invalid_argument("lps_graph: p = " + std::to_string(p) + " is not 1 mod 4");
    if (q % 4 != 1) throw std::invalid_argument("lps_graph: q = " + std::to_string(q) + " is not 1 mod 4");
    if (std::uint64_t{q} * q <= 4ull * p) throw std::invalid_argument("lps_graph: need q > 2 sqrt(p)");

    std::uint64_t sqrt_minus_one = 0;
    for (std::uint64_t x = 2; x < q; ++x)
        if (x * x % q == q - 1u) {
            sqrt_minus_one = x;
            break;
        }

    auto mod = [q](long long v) {
        long long r = v % static_cast<long long>(q);
        return static_cast<std::uint32_t>(r < 0 ? r + q : r);
    };
    std::vector<detail::Mat2> gens;
    for (auto [a, b, c, d] : lps_generators(p)) {
        const long long i = static_cast<long long>(sqrt_minus_one);
        gens.push_back(detail::normalize(
            {mod(a + b * i), mod(c + d * i), mod(-c + d * i), mod(a - b * i)}, q));
    }
    if (gens.size() != p + 1) throw ConsistencyError("lps_graph: expected p+1 generators");

    std::unordered_map<std::uint64_t, Vertex> index;
    std::vector<detail::Mat2> vertices{detail::Mat2{1, 0, 0, 1}};
    index.emplace(detail::encode(vertices[0], q), 0);
    std::vector<std::vector<Vertex>> adj;
    for (std::size_t head = 0; head < vertices.size(); ++head) {
        std::vector<Vertex> nbrs;
        nbrs.reserve(gens.size());
        for (const auto& s : gens) {
            auto y = detail::normalize(detail::mat_mul(vertices[head], s, q), q);
            auto [it, inserted] = index.emplace(detail::encode(y, q), static_cast<Vertex>(vertices.size()));
            if (inserted) vertices.push_back(y);
            nbrs.push_back(it->second);
        }
        adj.push_back(std::move(nbrs));
    }
    Graph g = Graph::from_adjacency(std::move(adj));
    if (g.regular_degree() != std::optional<std::size_t>(p + 1))
        throw ConsistencyError("lps_graph: Cayley graph is not (p+1)-regular");
    const std::uint64_t pgl = std::uint64_t{q} * (std::uint64_t{q} * q - 1);
    const std::uint64_t expected = is_quadratic_residue(p, q) ? pgl / 2 : pgl;
    if (g.num_vertices() != expected) throw ConsistencyError("lps_graph: unexpected component size");
    return g;
}

}  // namespace blockforge::expander
