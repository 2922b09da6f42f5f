#pragma once

// Proper-linear-combination hypergraphs H_{W->L}, tree-like elimination orders,
// and the rank certificate dim(pspan(H) & L) >= dim(U) - s + 1.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "budget.hpp"
#include "combinatorics.hpp"
#include "error.hpp"
#include "hypergraph.hpp"
#include "matrix.hpp"
#include "parallel.hpp"
#include "subspace.hpp"
#include "supply.hpp"

namespace blockforge::lincomb {

using gf::Field;
using gf::Scalar;
using linalg::MatrixGF;
using linalg::SubspaceBasis;
using linalg::Vector;
using supply::PointSupply;

/// sum_i coefficients[i] * W_{edge[i]} = target, every coefficient nonzero, target in L.
struct EdgeWitness {
    Edge edge;
    Vector coefficients;
    Vector target;

    friend bool operator==(const EdgeWitness&, const EdgeWitness&) = default;
};

inline constexpr std::uint64_t kDirectEnumerationLimit = 1'000'000;

namespace detail {

/// Q * W_i for every i in X (columns of length codim).
inline std::vector<Vector> project(const MatrixGF& q, const MatrixGF& w, const Edge& x) {
    std::vector<Vector> out;
    out.reserve(x.size());
    for (auto i : x) out.push_back(linalg::apply(q, w.column(i)));
    return out;
}

inline EdgeWitness make_witness(const MatrixGF& w, const Edge& x, Vector coeffs) {
    const Field& f = w.field();
    Vector target(w.rows(), 0);
    for (std::size_t j = 0; j < x.size(); ++j)
        for (std::size_t r = 0; r < w.rows(); ++r) target[r] = f.fma(coeffs[j], w(r, x[j]), target[r]);
    return {x, std::move(coeffs), std::move(target)};
}

/// Lexicographically least all-nonzero a with a_0 = 1 and sum a_j p_j = 0.
inline std::optional<Vector> search_direct(const Field& f, const std::vector<Vector>& p) {
    const std::size_t m = p.size(), rows = p.empty() ? 0 : p[0].size();
    const Scalar q = f.q();
    Vector a(m, 1);
    Vector acc(rows);
    while (true) {
        std::fill(acc.begin(), acc.end(), 0);
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t r = 0; r < rows; ++r) acc[r] = f.fma(a[j], p[j][r], acc[r]);
        if (linalg::is_zero_vector(acc)) return a;
        std::size_t j = m;
        bool carried = true;
        while (carried && j-- > 1) {
            if (++a[j] < q) carried = false;
            else a[j] = 1;
        }
        if (carried) return std::nullopt;
    }
}

/// Same answer as search_direct, found inside the solution space of [p_0 .. p_m-1] a = 0.
inline std::optional<Vector> search_null_space(const Field& f, const std::vector<Vector>& p, std::uint64_t budget) {
    const std::size_t m = p.size(), rows = p[0].size();
    MatrixGF a(f, rows, m);
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t r = 0; r < rows; ++r) a(r, j) = p[j][r];
    MatrixGF basis = linalg::null_space(a);
    const std::size_t dim = basis.rows();
    if (dim == 0) return std::nullopt;
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < dim; ++i) {
        if (total > budget / f.q()) throw BudgetExceeded("subspaces", budget, "plc_edge: solution space too large");
        total *= f.q();
    }
    std::optional<Vector> best;
    Vector c(dim, 0), v(m);
    for (std::uint64_t it = 1; it < total; ++it) {
        for (std::size_t i = dim; i-- > 0;) {
            if (++c[i] < f.q()) break;
            c[i] = 0;
        }
        std::fill(v.begin(), v.end(), 0);
        for (std::size_t i = 0; i < dim; ++i)
            if (c[i])
                for (std::size_t j = 0; j < m; ++j) v[j] = f.fma(c[i], basis(i, j), v[j]);
        if (std::find(v.begin(), v.end(), Scalar{0}) != v.end()) continue;
        linalg::normalize(f, v);
        if (!best || v < *best) best = v;
    }
    return best;
}

}  // namespace detail

/// A proper combination of the X-columns of W lying in L, if any. The witness is
/// the lexicographically least coefficient tuple with leading coefficient 1.
inline std::optional<EdgeWitness> plc_edge(const PointSupply& w, Edge x, const SubspaceBasis& l,
                                           std::size_t max_size, std::uint64_t budget = Budgets{}.subspaces) {
    if (x.empty()) throw std::invalid_argument("plc_edge: empty vertex set");
    if (x.size() > max_size)
        throw std::invalid_argument("plc_edge: |X| = " + std::to_string(x.size()) + " exceeds bound " +
                                    std::to_string(max_size));
    std::sort(x.begin(), x.end());
    for (auto v : x)
        if (v >= w.n()) throw std::invalid_argument("plc_edge: vertex out of range");
    if (l.ambient_dim() != w.k()) throw std::invalid_argument("plc_edge: dimension mismatch");
    const Field& f = w.field();
    if (l.codim() == 0) return detail::make_witness(w.points(), x, Vector(x.size(), 1));

    auto p = detail::project(linalg::quotient_map(l), w.points(), x);
    std::uint64_t tuples = 1;
    for (std::size_t i = 1; i < x.size() && tuples <= kDirectEnumerationLimit; ++i) tuples *= f.q() - 1;
    auto coeffs = tuples <= kDirectEnumerationLimit ? detail::search_direct(f, p)
                                                    : detail::search_null_space(f, p, budget);
    if (!coeffs) return std::nullopt;
    return detail::make_witness(w.points(), x, std::move(*coeffs));
}

/// Sub-hypergraph of H_{W->L} on the candidate edges, with one witness per edge
/// (witnesses[i] belongs to hypergraph.edge(i)).
struct PlcHypergraph {
    Hypergraph hypergraph;
    std::vector<EdgeWitness> witnesses;
};

inline PlcHypergraph build_plc_hypergraph(const PointSupply& w, const SubspaceBasis& l, std::vector<Edge> candidates,
                                          std::size_t max_size, unsigned jobs = 1) {
    for (auto& e : candidates) std::sort(e.begin(), e.end());
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (const auto& e : candidates)
        if (e.size() > max_size) throw std::invalid_argument("build_plc_hypergraph: candidate exceeds size bound");

    std::vector<std::optional<EdgeWitness>> found(candidates.size());
    auto shards = shard_ranges(candidates.size(), std::max(1u, jobs));
    run_shards(shards.size(), [&](std::size_t s) {
        for (auto i = shards[s].first; i < shards[s].second; ++i) found[i] = plc_edge(w, candidates[i], l, max_size);
    });
    std::vector<Edge> edges;
    PlcHypergraph out;
    for (auto& fw : found)
        if (fw) {
            edges.push_back(fw->edge);
            out.witnesses.push_back(std::move(*fw));
        }
    out.hypergraph = Hypergraph(w.n(), std::move(edges));
    return out;
}

/// v_i has degree exactly 1 in H[{v_i..v_n}] for i <= n-s+1, realized by witness_edges[i].
struct EliminationOrder {
    std::vector<std::uint32_t> order;
    std::uint32_t s = 0;
    std::vector<std::size_t> witness_edges;  // indices into H.edges()
};

struct TreeLikeSearch {
    std::optional<EliminationOrder> order;
    bool decided = true;  // false: greedy stalled and the instance was too large to backtrack
};

inline constexpr std::uint32_t kBacktrackLimit = 20;

namespace detail {

inline std::size_t eliminations_needed(std::uint32_t n, std::uint32_t s) {
    return n + 1 >= s ? n + 1 - s : 0;
}

/// Completes a prefix of eliminated vertices into a full order (rest ascending).
inline EliminationOrder finish_order(const Hypergraph& h, std::uint32_t s, std::vector<std::uint32_t> prefix,
                                     std::vector<std::size_t> edges) {
    std::vector<char> used(h.num_vertices(), 0);
    for (auto v : prefix) used[v] = 1;
    for (std::uint32_t v = 0; v < h.num_vertices(); ++v)
        if (!used[v]) prefix.push_back(v);
    return {std::move(prefix), s, std::move(edges)};
}

/// The unique alive edge through v, where alive means every vertex is still present.
inline std::size_t sole_edge(const std::vector<std::vector<std::size_t>>& incident, const std::vector<char>& alive,
                             std::uint32_t v) {
    for (auto e : incident[v])
        if (alive[e]) return e;
    return static_cast<std::size_t>(-1);
}

}  // namespace detail

/// Greedy least-index degree-1 elimination, with exhaustive backtracking when
/// greedy stalls on at most 20 vertices.
inline TreeLikeSearch search_tree_like_order(const Hypergraph& h, std::uint32_t s) {
    if (s < 1) throw std::invalid_argument("tree_like_order: s must be >= 1");
    if (!h.is_bounded(s))
        throw std::invalid_argument("tree_like_order: hypergraph is not " + std::to_string(s) + "-bounded");
    const std::uint32_t n = h.num_vertices();
    const std::size_t need = detail::eliminations_needed(n, s);

    std::vector<std::vector<std::size_t>> incident(n);
    for (std::size_t e = 0; e < h.num_edges(); ++e)
        for (auto v : h.edge(e)) incident[v].push_back(e);

    std::vector<char> alive(h.num_edges(), 1);
    std::vector<std::uint32_t> degree(n);
    for (std::uint32_t v = 0; v < n; ++v) degree[v] = static_cast<std::uint32_t>(incident[v].size());

    auto remove = [&](std::uint32_t v) {
        for (auto e : incident[v])
            if (alive[e]) {
                alive[e] = 0;
                for (auto u : h.edge(e)) --degree[u];
            }
    };

    std::vector<char> present(n, 1);
    std::vector<std::uint32_t> prefix;
    std::vector<std::size_t> used_edges;
    while (prefix.size() < need) {
        std::uint32_t pick = n;
        for (std::uint32_t v = 0; v < n; ++v)
            if (present[v] && degree[v] == 1) {
                pick = v;
                break;
            }
        if (pick == n) break;
        used_edges.push_back(detail::sole_edge(incident, alive, pick));
        prefix.push_back(pick);
        present[pick] = 0;
        remove(pick);
    }
    if (prefix.size() == need) return {detail::finish_order(h, s, std::move(prefix), std::move(used_edges)), true};
    if (n > kBacktrackLimit) return {std::nullopt, false};

    // exhaustive search over remaining-vertex masks
    std::vector<std::uint32_t> edge_mask(h.num_edges(), 0);
    for (std::size_t e = 0; e < h.num_edges(); ++e)
        for (auto v : h.edge(e)) edge_mask[e] |= 1u << v;
    std::unordered_set<std::uint32_t> dead;
    std::vector<std::uint32_t> order;
    std::vector<std::size_t> edges;
    auto dfs = [&](auto&& self, std::uint32_t mask) -> bool {
        if (order.size() == need) return true;
        if (dead.count(mask)) return false;
        for (std::uint32_t v = 0; v < n; ++v) {
            if (!(mask >> v & 1)) continue;
            std::size_t only = 0, count = 0;
            for (auto e : incident[v])
                if ((edge_mask[e] & mask) == edge_mask[e]) {
                    only = e;
                    if (++count > 1) break;
                }
            if (count != 1) continue;
            order.push_back(v);
            edges.push_back(only);
            if (self(self, mask & ~(1u << v))) return true;
            order.pop_back();
            edges.pop_back();
        }
        dead.insert(mask);
        return false;
    };
    const std::uint32_t full = n == 32 ? ~0u : (1u << n) - 1;
    if (dfs(dfs, full)) return {detail::finish_order(h, s, std::move(order), std::move(edges)), true};
    return {std::nullopt, true};
}

inline std::optional<EliminationOrder> tree_like_order(const Hypergraph& h, std::uint32_t s) {
    return search_tree_like_order(h, s).order;
}

/// Direct recount of the degree-1 suffix property.
inline bool check_elimination_order(const Hypergraph& h, const EliminationOrder& ord) {
    const std::uint32_t n = h.num_vertices();
    if (ord.order.size() != n) return false;
    std::vector<std::size_t> pos(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (ord.order[i] >= n || pos[ord.order[i]] != n) return false;
        pos[ord.order[i]] = i;
    }
    const std::size_t need = detail::eliminations_needed(n, ord.s);
    if (ord.witness_edges.size() != need) return false;
    for (std::size_t i = 0; i < need; ++i) {
        const std::uint32_t v = ord.order[i];
        std::size_t count = 0, which = 0;
        for (std::size_t e = 0; e < h.num_edges(); ++e) {
            const auto& edge = h.edge(e);
            bool in_suffix = std::all_of(edge.begin(), edge.end(), [&](auto u) { return pos[u] >= i; });
            if (in_suffix && std::binary_search(edge.begin(), edge.end(), v)) {
                ++count;
                which = e;
            }
        }
        if (count != 1 || which != ord.witness_edges[i]) return false;
    }
    return true;
}

struct Certificate {
    MatrixGF m;  // (n-s+1) x n, columns in elimination order
    MatrixGF n;  // n x k, rows = points in elimination order
    std::size_t achieved_dim = 0;
    std::size_t rank_n = 0;
    std::uint32_t s = 0;
    std::vector<std::uint32_t> order;
    std::vector<EdgeWitness> rows;  // witness behind each row of M
};

/// Assembles M and N for an elimination order of a PLC hypergraph, checks
/// triangularity, membership of every row of M*N in L and the rank bound.
inline Certificate certify(const PointSupply& w, const SubspaceBasis& l, const PlcHypergraph& plc,
                           const EliminationOrder& ord) {
    const Hypergraph& h = plc.hypergraph;
    const std::uint32_t n = h.num_vertices();
    if (n > w.n()) throw std::invalid_argument("certify: hypergraph has more vertices than the supply");
    if (ord.order.size() != n) throw std::invalid_argument("certify: order is not a permutation of the vertices");
    const Field& f = w.field();
    const std::size_t rows = detail::eliminations_needed(n, ord.s);
    if (ord.witness_edges.size() < rows) throw std::invalid_argument("certify: missing witness edge");

    std::vector<std::size_t> pos(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (ord.order[i] >= n || pos[ord.order[i]] != n) throw std::invalid_argument("certify: order is not a permutation");
        pos[ord.order[i]] = i;
    }

    Certificate cert;
    cert.s = ord.s;
    cert.order = ord.order;
    cert.m = MatrixGF(f, rows, n);
    cert.n = MatrixGF(f, n, w.k());
    for (std::size_t i = 0; i < n; ++i)
        for (std::uint32_t r = 0; r < w.k(); ++r) cert.n(i, r) = w.points()(r, ord.order[i]);

    for (std::size_t ell = 0; ell < rows; ++ell) {
        const std::size_t e = ord.witness_edges[ell];
        if (e >= plc.witnesses.size()) throw std::invalid_argument("certify: missing witness for edge");
        const EdgeWitness& wit = plc.witnesses[e];
        for (std::size_t j = 0; j < wit.edge.size(); ++j) {
            const std::size_t col = pos[wit.edge[j]];
            if (wit.coefficients[j] == 0) throw ConsistencyError("certify: witness has a zero coefficient");
            cert.m(ell, col) = wit.coefficients[j];
        }
        for (std::size_t c = 0; c < ell; ++c)
            if (cert.m(ell, c) != 0) throw ConsistencyError("certify: M is not upper triangular (bad order)");
        if (cert.m(ell, ell) == 0) throw ConsistencyError("certify: zero diagonal entry (bad order)");
        cert.rows.push_back(wit);
    }

    MatrixGF mn = linalg::multiply(cert.m, cert.n);
    for (std::size_t ell = 0; ell < rows; ++ell) {
        if (!l.contains(mn.row(ell))) throw ConsistencyError("certify: row of M*N is not in L");
        if (mn.row_vector(ell) != cert.rows[ell].target) throw ConsistencyError("certify: row of M*N differs from witness");
    }
    cert.achieved_dim = linalg::rank(mn);
    cert.rank_n = linalg::rank(cert.n);
    if (static_cast<long long>(cert.achieved_dim) < static_cast<long long>(cert.rank_n) - ord.s + 1)
        throw ConsistencyError("certify: achieved dimension below rank(N) - s + 1");
    return cert;
}

/// First (s+1)-subset of U, in lexicographic order of positions, with a full-support
/// combination in L.
inline std::optional<EdgeWitness> exactly_s_plus_one_edge(const PointSupply& w, const std::vector<std::uint32_t>& u,
                                                           const SubspaceBasis& l, std::uint32_t s) {
    if (w.field().q() <= s)
        throw std::invalid_argument("exactly_s_plus_one_edge: need q > s (q = " + std::to_string(w.field().q()) + ")");
    std::optional<EdgeWitness> found;
    for_each_combination(static_cast<std::uint32_t>(u.size()), s + 1, [&](const std::vector<std::uint32_t>& c) {
        Edge x;
        for (auto i : c) x.push_back(u[i]);
        found = plc_edge(w, x, l, s + 1);
        return !found;
    });
    return found;
}

}  // namespace blockforge::lincomb
