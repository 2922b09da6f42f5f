#pragma once

// Blocking-set constructions: B is the union of the spans of the edges of a
// hypergraph on a point supply, stored projectively.

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "budget.hpp"
#include "combinatorics.hpp"
#include "graph.hpp"
#include "hypergraph.hpp"
#include "matrix.hpp"
#include "parallel.hpp"
#include "supply.hpp"

namespace blockforge::construct {

using expander::Graph;
using expander::Vertex;
using gf::Field;
using gf::Scalar;
using linalg::MatrixGF;
using linalg::Vector;
using supply::PointSupply;

/// First nonzero coordinate scaled to 1. Throws on the zero vector.
inline Vector normalize_point(const Field& f, Vector v) {
    if (linalg::is_zero_vector(v)) throw std::invalid_argument("normalize_point: zero vector");
    linalg::normalize(f, v);
    return v;
}

/// Projective point set in PG(k-1, q): normalized, sorted, distinct.
class BlockingSet {
public:
    using Parameters = std::vector<std::pair<std::string, std::string>>;

    BlockingSet(Field field, std::uint32_t k, std::vector<Vector> points, std::string recipe = "file",
                Parameters params = {})
        : field_(std::move(field)), k_(k), recipe_(std::move(recipe)), params_(std::move(params)) {
        for (auto& p : points) {
            if (p.size() != k_) throw std::invalid_argument("blocking set: point has wrong length");
            for (auto x : p)
                if (!field_.contains(x)) throw std::invalid_argument("blocking set: coordinate outside the field");
            p = normalize_point(field_, std::move(p));
        }
        std::sort(points.begin(), points.end());
        points.erase(std::unique(points.begin(), points.end()), points.end());
        points_ = std::move(points);
    }

    const Field& field() const noexcept { return field_; }
    std::uint32_t k() const noexcept { return k_; }
    std::size_t size() const noexcept { return points_.size(); }
    const std::vector<Vector>& points() const noexcept { return points_; }
    const std::string& recipe() const noexcept { return recipe_; }
    const Parameters& parameters() const noexcept { return params_; }

    /// |B| x k, one point per row.
    MatrixGF as_rows() const { return MatrixGF::from_rows(field_, points_, k_); }

    friend bool operator==(const BlockingSet& a, const BlockingSet& b) {
        return a.field_ == b.field_ && a.k_ == b.k_ && a.points_ == b.points_;
    }

private:
    Field field_;
    std::uint32_t k_;
    std::vector<Vector> points_;
    std::string recipe_;
    Parameters params_;
};

/// All (q^k - 1)/(q - 1) points of PG(k-1, q).
inline BlockingSet projective_space(const Field& f, std::uint32_t k) {
    std::vector<Vector> pts;
    supply::detail::for_each_projective(f, k, [&](const Vector& v) {
        pts.push_back(v);
        return true;
    });
    return BlockingSet(f, k, std::move(pts), "projective-space", {{"k", std::to_string(k)}});
}

namespace detail {

/// Normalized projective points of span(W_f), appended to out.
inline void span_points(const MatrixGF& w, const Edge& e, std::vector<Vector>& out) {
    const Field& f = w.field();
    supply::detail::for_each_projective(f, e.size(), [&](const Vector& c) {
        Vector v(w.rows(), 0);
        for (std::size_t j = 0; j < e.size(); ++j)
            if (c[j])
                for (std::size_t r = 0; r < w.rows(); ++r) v[r] = f.fma(c[j], w(r, e[j]), v[r]);
        if (!linalg::is_zero_vector(v)) {
            linalg::normalize(f, v);
            out.push_back(std::move(v));
        }
        return true;
    });
}

inline void sort_unique(std::vector<Vector>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace detail

/// Union of span(f) over the edges f of H. Sharded by edge; each shard
/// deduplicates before the merge.
inline BlockingSet edge_span_union(const Hypergraph& h, const PointSupply& w, std::uint64_t point_cap = Budgets{}.points,
                                   unsigned jobs = 1, std::string recipe = "edge-span-union",
                                   BlockingSet::Parameters params = {}) {
    if (h.num_vertices() > w.n()) throw std::invalid_argument("edge_span_union: hypergraph larger than supply");
    auto shards = shard_ranges(h.num_edges(), std::max(1u, jobs));
    std::vector<std::vector<Vector>> parts(shards.size());
    run_shards(shards.size(), [&](std::size_t s) {
        auto& out = parts[s];
        for (auto i = shards[s].first; i < shards[s].second; ++i) {
            detail::span_points(w.points(), h.edge(i), out);
            if (out.size() > 2 * point_cap) {
                detail::sort_unique(out);
                if (out.size() > point_cap)
                    throw BudgetExceeded("points", point_cap, "edge_span_union: point cap exceeded");
            }
        }
        detail::sort_unique(out);
    });
    std::vector<Vector> all;
    for (auto& p : parts) all.insert(all.end(), p.begin(), p.end());
    detail::sort_unique(all);
    if (all.size() > point_cap) throw BudgetExceeded("points", point_cap, "edge_span_union: point cap exceeded");
    return BlockingSet(w.field(), w.k(), std::move(all), std::move(recipe), std::move(params));
}

/// {x, y, z} for every path y - x - z.
inline Hypergraph cherry_hypergraph(const Graph& g) {
    std::vector<Edge> edges;
    for (Vertex x = 0; x < g.num_vertices(); ++x) {
        const auto& nb = g.neighbors(x);
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j) edges.push_back({x, nb[i], nb[j]});
    }
    return Hypergraph(g.num_vertices(), std::move(edges));
}

enum class BallReading { center, pairwise };

inline const char* to_string(BallReading r) { return r == BallReading::center ? "center" : "pairwise"; }

namespace detail {

inline void require_supply(const Graph& g, const PointSupply& w) {
    if (w.n() != g.num_vertices())
        throw std::invalid_argument("construct: supply has " + std::to_string(w.n()) + " points but the graph has " +
                                    std::to_string(g.num_vertices()) + " vertices");
}

inline void require_independence(PointSupply& w, std::uint32_t s, const char* who) {
    auto rep = supply::ensure_report(w);
    if (rep.s_independence < s)
        throw std::invalid_argument(std::string(who) + ": supply s_independence " + std::to_string(rep.s_independence) +
                                    " < " + std::to_string(s));
}

/// All r-subsets of each listed vertex set.
inline Hypergraph subsets_of(std::uint32_t n, const std::vector<std::vector<Vertex>>& sets, std::uint32_t r,
                             std::uint64_t budget) {
    std::uint64_t total = 0;
    for (const auto& s : sets) {
        total += binomial(s.size(), r);
        if (total > budget) throw BudgetExceeded("cliques", budget, "construct: too many candidate edges");
    }
    std::vector<Edge> edges;
    edges.reserve(total);
    for (const auto& s : sets)
        for_each_combination(static_cast<std::uint32_t>(s.size()), r, [&](const std::vector<std::uint32_t>& c) {
            Edge e;
            for (auto i : c) e.push_back(s[i]);
            edges.push_back(std::move(e));
            return true;
        });
    return Hypergraph(n, std::move(edges));
}

}  // namespace detail

/// B from the 3-uniform hypergraph of cherries of G.
inline BlockingSet construct_cherry(const Graph& g, PointSupply w, const Budgets& budgets = {}, unsigned jobs = 1) {
    detail::require_supply(g, w);
    detail::require_independence(w, 2, "construct_cherry");
    Hypergraph h = cherry_hypergraph(g);
    if (h.num_edges() == 0) throw std::invalid_argument("construct_cherry: graph has no cherries");
    return edge_span_union(h, w, budgets.points, jobs, "cherry", {{"s", "2"}});
}

/// r-subsets (r = s+1) of the balls B_r(x) (center reading) or r-cliques of G^r
/// (pairwise reading).
inline Hypergraph ball_power_hypergraph(const Graph& g, std::uint32_t s, BallReading reading,
                                        std::uint64_t budget = Budgets{}.cliques) {
    if (s < 1) throw std::invalid_argument("construct_ball_power: s must be >= 1");
    const std::uint32_t r = s + 1;
    if (reading == BallReading::pairwise) return expander::clique_hypergraph(expander::power_graph(g, r), r, budget);
    std::vector<std::vector<Vertex>> balls;
    for (Vertex x = 0; x < g.num_vertices(); ++x) balls.push_back(expander::ball(g, x, static_cast<int>(r)));
    return detail::subsets_of(g.num_vertices(), balls, r, budget);
}

inline BlockingSet construct_ball_power(const Graph& g, PointSupply w, std::uint32_t s,
                                        BallReading reading = BallReading::center, const Budgets& budgets = {},
                                        unsigned jobs = 1) {
    detail::require_supply(g, w);
    detail::require_independence(w, s, "construct_ball_power");
    Hypergraph h = ball_power_hypergraph(g, s, reading, budgets.cliques);
    return edge_span_union(h, w, budgets.points, jobs, "ballpower",
                           {{"s", std::to_string(s)}, {"reading", to_string(reading)}});
}

/// r-subsets (r = s+1) of the closed neighbourhoods N[x].
inline Hypergraph neighborhood_hypergraph(const Graph& g, std::uint32_t s, std::uint64_t budget = Budgets{}.cliques) {
    if (s < 1) throw std::invalid_argument("construct_neighborhood: s must be >= 1");
    std::vector<std::vector<Vertex>> nbhds;
    for (Vertex x = 0; x < g.num_vertices(); ++x) nbhds.push_back(expander::ball(g, x, 1));
    return detail::subsets_of(g.num_vertices(), nbhds, s + 1, budget);
}

inline BlockingSet construct_neighborhood(const Graph& g, PointSupply w, std::uint32_t s, const Budgets& budgets = {},
                                          unsigned jobs = 1) {
    detail::require_supply(g, w);
    Hypergraph h = neighborhood_hypergraph(g, s, budgets.cliques);
    return edge_span_union(h, w, budgets.points, jobs, "neighborhood", {{"s", std::to_string(s)}});
}

/// (q^{s+1} - 1)(k - s)/(q - 1), a lower bound on any strong s-blocking set in PG(k-1, q).
inline std::uint64_t lower_bound(std::uint64_t q, std::uint64_t k, std::uint64_t s) {
    if (s < 1 || k <= s) throw std::invalid_argument("lower_bound: need k > s >= 1");
    if (q < 2) throw std::invalid_argument("lower_bound: q must be >= 2");
    unsigned __int128 pw = 1;
    for (std::uint64_t i = 0; i <= s; ++i) {
        pw *= q;
        if (pw > std::numeric_limits<std::uint64_t>::max()) throw std::overflow_error("lower_bound: overflow");
    }
    const unsigned __int128 v = (pw - 1) / (q - 1) * (k - s);
    if (v > std::numeric_limits<std::uint64_t>::max()) throw std::overflow_error("lower_bound: overflow");
    return static_cast<std::uint64_t>(v);
}

}  // namespace blockforge::construct
