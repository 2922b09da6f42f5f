#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "budget.hpp"
#include "error.hpp"
#include "hypergraph.hpp"

namespace blockforge::expander {

using Vertex = std::uint32_t;
using VertexSet = std::vector<Vertex>;  // sorted

/// Simple undirected graph with sorted adjacency lists.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::uint32_t n) : adj_(n) {}

    /// Rejects self-loops, repeated edges and out-of-range endpoints.
    static Graph from_edges(std::uint32_t n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
        Graph g(n);
        for (auto [u, v] : edges) {
            if (u >= n || v >= n) throw std::invalid_argument("graph: endpoint out of range");
            if (u == v) throw std::invalid_argument("graph: self-loop at " + std::to_string(u));
            g.adj_[u].push_back(v);
            g.adj_[v].push_back(u);
        }
        for (auto& a : g.adj_) {
            std::sort(a.begin(), a.end());
            if (std::adjacent_find(a.begin(), a.end()) != a.end())
                throw std::invalid_argument("graph: repeated edge");
        }
        return g;
    }

    /// Takes ownership of adjacency lists that are already symmetric and loop-free.
    static Graph from_adjacency(std::vector<std::vector<Vertex>> adj) {
        Graph g;
        for (auto& a : adj) {
            std::sort(a.begin(), a.end());
            a.erase(std::unique(a.begin(), a.end()), a.end());
        }
        g.adj_ = std::move(adj);
        for (Vertex u = 0; u < g.adj_.size(); ++u)
            for (Vertex v : g.adj_[u])
                if (v == u || !g.has_edge(v, u)) throw std::invalid_argument("graph: adjacency not symmetric/simple");
        return g;
    }

    std::uint32_t num_vertices() const noexcept { return static_cast<std::uint32_t>(adj_.size()); }
    std::uint64_t num_edges() const noexcept {
        std::uint64_t s = 0;
        for (const auto& a : adj_) s += a.size();
        return s / 2;
    }
    const std::vector<Vertex>& neighbors(Vertex v) const noexcept { return adj_[v]; }
    std::size_t degree(Vertex v) const noexcept { return adj_[v].size(); }
    bool has_edge(Vertex u, Vertex v) const {
        return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
    }

    std::vector<std::pair<Vertex, Vertex>> edges() const {
        std::vector<std::pair<Vertex, Vertex>> out;
        for (Vertex u = 0; u < adj_.size(); ++u)
            for (Vertex v : adj_[u])
                if (u < v) out.emplace_back(u, v);
        return out;
    }

    /// Common degree when regular.
    std::optional<std::size_t> regular_degree() const {
        if (adj_.empty()) return 0;
        const std::size_t d = adj_[0].size();
        for (const auto& a : adj_)
            if (a.size() != d) return std::nullopt;
        return d;
    }

    friend bool operator==(const Graph& a, const Graph& b) { return a.adj_ == b.adj_; }

private:
    std::vector<std::vector<Vertex>> adj_;
};

inline Graph complete_graph(std::uint32_t n) {
    std::vector<std::vector<Vertex>> adj(n);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = 0; v < n; ++v)
            if (u != v) adj[u].push_back(v);
    return Graph::from_adjacency(std::move(adj));
}

inline Graph cycle_graph(std::uint32_t n) {
    std::vector<std::pair<Vertex, Vertex>> e;
    for (Vertex i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return Graph::from_edges(n, e);
}

inline Graph path_graph(std::uint32_t n) {
    std::vector<std::pair<Vertex, Vertex>> e;
    for (Vertex i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return Graph::from_edges(n, e);
}

/// BFS distances from `source`, -1 for unreachable; stops expanding past `max_depth`.
inline std::vector<int> bfs_distances(const Graph& g, Vertex source, int max_depth = -1) {
    std::vector<int> dist(g.num_vertices(), -1);
    std::queue<Vertex> frontier;
    dist[source] = 0;
    frontier.push(source);
    while (!frontier.empty()) {
        Vertex u = frontier.front();
        frontier.pop();
        if (max_depth >= 0 && dist[u] >= max_depth) continue;
        for (Vertex v : g.neighbors(u))
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                frontier.push(v);
            }
    }
    return dist;
}

inline bool is_connected(const Graph& g) {
    if (g.num_vertices() == 0) return true;
    auto d = bfs_distances(g, 0);
    return std::none_of(d.begin(), d.end(), [](int x) { return x < 0; });
}

/// Proper 2-colouring (0/1 per vertex) when the graph is bipartite.
inline std::optional<std::vector<int>> bipartition(const Graph& g) {
    std::vector<int> side(g.num_vertices(), -1);
    for (Vertex s = 0; s < g.num_vertices(); ++s) {
        if (side[s] >= 0) continue;
        side[s] = 0;
        std::queue<Vertex> q;
        q.push(s);
        while (!q.empty()) {
            Vertex u = q.front();
            q.pop();
            for (Vertex v : g.neighbors(u)) {
                if (side[v] < 0) {
                    side[v] = 1 - side[u];
                    q.push(v);
                } else if (side[v] == side[u]) {
                    return std::nullopt;
                }
            }
        }
    }
    return side;
}

/// B_t(x): vertices at distance at most t from x.
inline VertexSet ball(const Graph& g, Vertex x, int t) {
    if (t < 0) throw std::invalid_argument("ball: radius must be >= 0");
    auto d = bfs_distances(g, x, t);
    VertexSet out;
    for (Vertex v = 0; v < g.num_vertices(); ++v)
        if (d[v] >= 0 && d[v] <= t) out.push_back(v);
    return out;
}

/// G^u: edge xy iff 1 <= dist(x, y) <= u.
inline Graph power_graph(const Graph& g, int u) {
    if (u < 1) throw std::invalid_argument("power_graph: exponent must be >= 1");
    std::vector<std::vector<Vertex>> adj(g.num_vertices());
    for (Vertex x = 0; x < g.num_vertices(); ++x) {
        for (Vertex y : ball(g, x, u))
            if (y != x) adj[x].push_back(y);
    }
    return Graph::from_adjacency(std::move(adj));
}

/// G[K_D]: every vertex becomes a D-clique, G-edges become complete bipartite joins.
/// Vertex (v, i) is numbered v*D + i.
inline Graph blowup(const Graph& g, std::uint32_t d) {
    if (d < 1) throw std::invalid_argument("blowup: D must be >= 1");
    const std::uint32_t n = g.num_vertices();
    std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(n) * d);
    for (Vertex v = 0; v < n; ++v)
        for (std::uint32_t i = 0; i < d; ++i) {
            auto& a = adj[v * d + i];
            for (std::uint32_t j = 0; j < d; ++j)
                if (j != i) a.push_back(v * d + j);
            for (Vertex w : g.neighbors(v))
                for (std::uint32_t j = 0; j < d; ++j) a.push_back(w * d + j);
        }
    return Graph::from_adjacency(std::move(adj));
}

/// K_r(G): the r-uniform hypergraph of r-cliques.
inline Hypergraph clique_hypergraph(const Graph& g, std::uint32_t r, std::uint64_t budget = Budgets{}.cliques) {
    if (r < 2) throw std::invalid_argument("clique_hypergraph: r must be >= 2");
    std::vector<Edge> cliques;
    Edge current;
    // candidates: common higher-indexed neighbours of everything in `current`
    auto extend = [&](auto&& self, const std::vector<Vertex>& candidates) -> void {
        if (current.size() == r) {
            if (cliques.size() >= budget)
                throw BudgetExceeded("cliques", budget, "clique_hypergraph: too many cliques");
            cliques.push_back(current);
            return;
        }
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            Vertex v = candidates[i];
            std::vector<Vertex> next;
            for (std::size_t j = i + 1; j < candidates.size(); ++j)
                if (g.has_edge(v, candidates[j])) next.push_back(candidates[j]);
            if (current.size() + 1 + next.size() < r) continue;
            current.push_back(v);
            self(self, next);
            current.pop_back();
        }
    };
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        std::vector<Vertex> higher;
        for (Vertex w : g.neighbors(v))
            if (w > v) higher.push_back(w);
        current = {v};
        extend(extend, higher);
    }
    return Hypergraph(g.num_vertices(), std::move(cliques));
}

/// Vertex set of a largest connected component of G[U] (ties: the one found first
/// scanning U in increasing order).
inline VertexSet largest_component(const Graph& g, const VertexSet& u) {
    std::vector<char> in_u(g.num_vertices(), 0), seen(g.num_vertices(), 0);
    for (Vertex v : u) in_u[v] = 1;
    VertexSet best;
    for (Vertex s : u) {
        if (seen[s]) continue;
        VertexSet comp{s};
        seen[s] = 1;
        for (std::size_t head = 0; head < comp.size(); ++head)
            for (Vertex w : g.neighbors(comp[head]))
                if (in_u[w] && !seen[w]) {
                    seen[w] = 1;
                    comp.push_back(w);
                }
        if (comp.size() > best.size()) best = std::move(comp);
    }
    std::sort(best.begin(), best.end());
    return best;
}

/// Least x in U0 adjacent to some vertex of every U_i, if any. Sets must be disjoint.
inline std::optional<Vertex> find_star_vertex(const Graph& g, const VertexSet& u0,
                                              const std::vector<VertexSet>& targets) {
    std::vector<int> owner(g.num_vertices(), -1);
    auto claim = [&](const VertexSet& s, int id) {
        for (Vertex v : s) {
            if (owner[v] >= 0) throw std::invalid_argument("find_star_vertex: sets are not disjoint");
            owner[v] = id;
        }
    };
    claim(u0, 0);
    for (std::size_t i = 0; i < targets.size(); ++i) claim(targets[i], static_cast<int>(i) + 1);
    VertexSet sorted_u0 = u0;
    std::sort(sorted_u0.begin(), sorted_u0.end());
    std::vector<char> hit(targets.size() + 1);
    for (Vertex x : sorted_u0) {
        std::fill(hit.begin(), hit.end(), 0);
        std::size_t count = 0;
        for (Vertex w : g.neighbors(x)) {
            int o = owner[w];
            if (o >= 1 && !hit[o]) {
                hit[o] = 1;
                ++count;
            }
        }
        if (count == targets.size()) return x;
    }
    return std::nullopt;
}

}  // namespace blockforge::expander
