#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace blockforge {

using Edge = std::vector<std::uint32_t>;  // sorted vertex indices

/// Hypergraph on vertices [0, n). Edges are sorted, nonempty and pairwise distinct.
class Hypergraph {
public:
    Hypergraph() = default;
    explicit Hypergraph(std::uint32_t n) : n_(n) {}

    /// Sorts each edge, drops duplicate edges, validates ranges.
    Hypergraph(std::uint32_t n, std::vector<Edge> edges) : n_(n) {
        for (auto& e : edges) {
            std::sort(e.begin(), e.end());
            validate(e);
        }
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        edges_ = std::move(edges);
        for (const auto& e : edges_) max_edge_ = std::max(max_edge_, e.size());
    }

    std::uint32_t num_vertices() const noexcept { return n_; }
    std::size_t num_edges() const noexcept { return edges_.size(); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const Edge& edge(std::size_t i) const noexcept { return edges_[i]; }
    std::size_t max_edge_size() const noexcept { return max_edge_; }
    bool is_bounded(std::size_t s) const noexcept { return max_edge_ <= s; }

    /// Index of `e` (sorted) among the edges, or -1.
    std::ptrdiff_t find(const Edge& e) const {
        auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
        if (it == edges_.end() || *it != e) return -1;
        return it - edges_.begin();
    }

    /// Sub-hypergraph on `vertices` (relabelled 0..|vertices|-1 in the given order)
    /// keeping only edges entirely inside the set.
    Hypergraph induced(const std::vector<std::uint32_t>& vertices) const {
        std::vector<std::int64_t> label(n_, -1);
        for (std::size_t i = 0; i < vertices.size(); ++i) label[vertices[i]] = static_cast<std::int64_t>(i);
        std::vector<Edge> kept;
        for (const auto& e : edges_) {
            Edge mapped;
            bool inside = true;
            for (auto v : e) {
                if (label[v] < 0) {
                    inside = false;
                    break;
                }
                mapped.push_back(static_cast<std::uint32_t>(label[v]));
            }
            if (inside) kept.push_back(std::move(mapped));
        }
        return Hypergraph(static_cast<std::uint32_t>(vertices.size()), std::move(kept));
    }

private:
    void validate(const Edge& e) const {
        if (e.empty()) throw std::invalid_argument("hypergraph: empty edge");
        if (e.back() >= n_) throw std::invalid_argument("hypergraph: vertex " + std::to_string(e.back()) + " out of range");
        if (std::adjacent_find(e.begin(), e.end()) != e.end())
            throw std::invalid_argument("hypergraph: repeated vertex inside an edge");
    }

    std::uint32_t n_ = 0;
    std::vector<Edge> edges_;
    std::size_t max_edge_ = 0;
};

}  // namespace blockforge
