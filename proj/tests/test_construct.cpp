#include <gtest/gtest.h>

#include <blockforge/construct.hpp>
#include <blockforge/graph.hpp>
#include <blockforge/random.hpp>
#include <blockforge/verify.hpp>

#include "oracles.hpp"

using namespace blockforge;
using namespace blockforge::construct;
using expander::Graph;
using linalg::MatrixGF;
using supply::PointSupply;
using supply::Provenance;

namespace {

oracle::NaiveField naive(const gf::Field& f) { return {f.p(), f.m(), f.modulus()}; }

// union of span(f) by full enumeration, normalized by brute scaling
std::set<oracle::Vec> union_oracle(const Hypergraph& h, const PointSupply& w) {
    auto f = naive(w.field());
    std::set<oracle::Vec> out;
    for (const auto& e : h.edges()) {
        std::vector<oracle::Vec> cols;
        for (auto i : e) cols.push_back(w.point(i));
        for (const auto& v : oracle::span(f, cols, w.k())) {
            if (oracle::is_zero(v)) continue;
            std::size_t lead = 0;
            while (v[lead] == 0) ++lead;
            const auto inv = f.inv(v[lead]);
            oracle::Vec n(v.size());
            for (std::size_t i = 0; i < v.size(); ++i) n[i] = f.mul(inv, v[i]);
            out.insert(n);
        }
    }
    return out;
}

std::set<oracle::Vec> as_set(const BlockingSet& b) { return {b.points().begin(), b.points().end()}; }

bool strong(const BlockingSet& b, std::uint32_t s) { return verify::is_strong_blocking(b, s).passed; }

Graph perfect_matching(std::uint32_t n) {
    std::vector<std::pair<expander::Vertex, expander::Vertex>> e;
    for (std::uint32_t i = 0; i + 1 < n; i += 2) e.emplace_back(i, i + 1);
    return Graph::from_edges(n, e);
}

}  // namespace

TEST(LowerBound, FrozenValues) {
    EXPECT_EQ(lower_bound(3, 10, 1), 36u);
    EXPECT_EQ(lower_bound(2, 3, 1), 6u);
    for (std::uint64_t q : {2u, 3u, 4u, 5u, 7u})
        for (std::uint64_t s = 1; s <= 3; ++s) {
            std::uint64_t pts = 0, pw = 1;
            for (std::uint64_t i = 0; i <= s; ++i) {
                pts += pw;
                pw *= q;
            }
            EXPECT_EQ(lower_bound(q, s + 1, s), pts);  // one codim-s condition: a whole PG(s, q)
        }
    EXPECT_THROW(lower_bound(3, 2, 2), std::invalid_argument);
    EXPECT_THROW(lower_bound(3, 4, 0), std::invalid_argument);
    EXPECT_THROW(lower_bound(1, 4, 1), std::invalid_argument);
    EXPECT_THROW(lower_bound(1u << 20, 100, 5), std::overflow_error);
}

TEST(BlockingSetType, NormalizesAndDedupes) {
    auto f = gf::Field::create(5, 1);
    BlockingSet b(f, 3, {{0, 2, 4}, {0, 1, 2}, {3, 0, 0}, {1, 0, 0}});
    EXPECT_EQ(b.size(), 2u);
    EXPECT_EQ(b.points()[0], (linalg::Vector{0, 1, 2}));
    EXPECT_EQ(b.points()[1], (linalg::Vector{1, 0, 0}));
    BlockingSet again(f, 3, b.points());
    EXPECT_TRUE(again == b);
    EXPECT_THROW(BlockingSet(f, 3, {{1, 0}}), std::invalid_argument);
    EXPECT_THROW(BlockingSet(f, 3, {{0, 0, 0}}), std::invalid_argument);
    EXPECT_THROW(BlockingSet(f, 2, {{5, 1}}), std::invalid_argument);
    Rng rng(2);
    for (int t = 0; t < 100; ++t) {
        linalg::Vector v{static_cast<gf::Scalar>(uniform_below(rng, 5)), static_cast<gf::Scalar>(uniform_below(rng, 5)),
                         1 + static_cast<gf::Scalar>(uniform_below(rng, 4))};
        auto once = normalize_point(f, v);
        EXPECT_EQ(normalize_point(f, once), once);
    }
    EXPECT_EQ(projective_space(f, 3).size(), 31u);
    EXPECT_EQ(projective_space(gf::Field::create(2, 2), 3).size(), 21u);
}

TEST(EdgeSpanUnion, SmallCases) {
    auto f5 = gf::Field::create(5, 1);
    PointSupply w = supply::supply_mds(f5, 3, 5);
    auto single = edge_span_union(Hypergraph(5, {{3}}), w);
    ASSERT_EQ(single.size(), 1u);
    EXPECT_EQ(single.points()[0], normalize_point(f5, w.point(3)));

    auto f2 = gf::Field::create(2, 1);
    PointSupply id(MatrixGF::identity(f2, 3), Provenance::file);
    EXPECT_EQ(edge_span_union(Hypergraph(3, {{0, 2}}), id).size(), 3u);
    EXPECT_THROW(edge_span_union(Hypergraph(6, {{5}}), w), std::invalid_argument);
}

TEST(EdgeSpanUnion, CherriesOfK4MatchOracle) {
    auto f = gf::Field::create(5, 1);
    PointSupply w = supply::supply_mds(f, 3, 4);
    auto h = cherry_hypergraph(expander::complete_graph(4));
    EXPECT_EQ(h.num_edges(), 4u);
    auto b = edge_span_union(h, w);
    EXPECT_EQ(as_set(b), union_oracle(h, w));
    EXPECT_EQ(b.size(), 31u);
}

TEST(EdgeSpanUnion, MonotoneBoundedAndShardInvariant) {
    auto f = gf::Field::create(3, 1);
    PointSupply w = supply::supply_random_verified(f, 4, 9, 1, 9, 5, 20);
    Rng rng(44);
    for (int t = 0; t < 20; ++t) {
        std::vector<Edge> edges;
        const auto m = 1 + uniform_below(rng, 6);
        for (std::uint64_t i = 0; i < m; ++i)
            edges.push_back(random_subset(rng, 9, 1 + static_cast<std::uint32_t>(uniform_below(rng, 3))));
        Hypergraph h(9, edges);
        auto b = edge_span_union(h, w);
        std::uint64_t bound = 0;
        for (const auto& e : h.edges()) {
            std::uint64_t pw = 1;
            for (std::size_t i = 0; i < e.size(); ++i) pw *= 3;
            bound += (pw - 1) / 2;
        }
        EXPECT_LE(b.size(), bound);
        EXPECT_EQ(as_set(b), union_oracle(h, w));
        EXPECT_TRUE(edge_span_union(h, w, Budgets{}.points, 4) == b);

        edges.push_back(random_subset(rng, 9, 2));
        auto bigger = edge_span_union(Hypergraph(9, edges), w);
        EXPECT_TRUE(std::includes(bigger.points().begin(), bigger.points().end(), b.points().begin(), b.points().end()));
    }
}

TEST(EdgeSpanUnion, PointCap) {
    auto f = gf::Field::create(5, 1);
    PointSupply w = supply::supply_mds(f, 3, 4);
    EXPECT_THROW(edge_span_union(cherry_hypergraph(expander::complete_graph(4)), w, 10), BudgetExceeded);
    EXPECT_NO_THROW(edge_span_union(cherry_hypergraph(expander::complete_graph(4)), w, 31));
}

TEST(Cherry, K4IsStrongTwoBlocking) {
    auto f = gf::Field::create(5, 1);
    auto b = construct_cherry(expander::complete_graph(4), supply::supply_mds(f, 3, 4));
    EXPECT_EQ(b.recipe(), "cherry");
    auto rep = verify::is_strong_blocking(b, 2);
    EXPECT_TRUE(rep.passed);
    EXPECT_EQ(rep.subspaces_checked, 31u);
    EXPECT_GE(b.size(), lower_bound(5, 3, 2));
    // n d^2 (q^3 - 1)/(q - 1)
    EXPECT_LE(b.size(), 4u * 9u * 31u);
}

TEST(Cherry, Preconditions) {
    auto f = gf::Field::create(5, 1);
    EXPECT_THROW(construct_cherry(perfect_matching(4), supply::supply_mds(f, 3, 4)), std::invalid_argument);
    EXPECT_THROW(construct_cherry(expander::complete_graph(5), supply::supply_mds(f, 3, 4)), std::invalid_argument);
    // every 3 points of PG(1,5) are dependent
    EXPECT_THROW(construct_cherry(expander::complete_graph(3), supply::supply_mds(f, 2, 3)), std::invalid_argument);
}

TEST(Cherry, BoundOnRegularGraphs) {
    auto f = gf::Field::create(3, 2);
    for (auto g : {expander::cycle_graph(8), expander::blowup(expander::cycle_graph(4), 2)}) {
        const std::uint32_t n = g.num_vertices();
        if (n > f.q() + 1) continue;
        auto b = construct_cherry(g, supply::supply_mds(f, 3, n));
        const std::uint64_t d = *g.regular_degree();
        EXPECT_LE(b.size(), n * d * d * (9u * 9u * 9u - 1) / 8);
        EXPECT_EQ(as_set(b), union_oracle(cherry_hypergraph(g), supply::supply_mds(f, 3, n)));
    }
}

TEST(BallPower, SOneOnCycleContainsGraphEdges) {
    auto f = gf::Field::create(5, 1);
    Graph c6 = expander::cycle_graph(6);
    auto h = ball_power_hypergraph(c6, 1, BallReading::center);
    for (auto [u, v] : c6.edges()) EXPECT_GE(h.find({u, v}), 0);
    auto b = construct_ball_power(c6, supply::supply_mds(f, 3, 6), 1);
    EXPECT_TRUE(strong(b, 1));
    EXPECT_GE(b.size(), lower_bound(5, 3, 1));
}

TEST(BallPower, K5OverGf7) {
    auto f = gf::Field::create(7, 1);
    Graph k5 = expander::complete_graph(5);
    auto h = ball_power_hypergraph(k5, 2, BallReading::center);
    EXPECT_EQ(h.num_edges(), 10u);
    auto b = construct_ball_power(k5, supply::supply_mds(f, 3, 5), 2);
    EXPECT_TRUE(strong(b, 2));
}

TEST(BallPower, ReadingsDiffer) {
    Graph c8 = expander::cycle_graph(8);
    auto center = ball_power_hypergraph(c8, 1, BallReading::center);
    auto pairwise = ball_power_hypergraph(c8, 1, BallReading::pairwise);
    EXPECT_EQ(center.num_edges(), 28u);    // C8 has diameter 4 = 2r
    EXPECT_EQ(pairwise.num_edges(), 16u);  // pairs at distance <= 2
    for (const auto& e : pairwise.edges()) EXPECT_GE(center.find(e), 0);
    EXPECT_THROW(ball_power_hypergraph(c8, 0, BallReading::center), std::invalid_argument);
    EXPECT_THROW(ball_power_hypergraph(c8, 3, BallReading::center, 5), BudgetExceeded);
}

TEST(BallPower, DisconnectedGraphFailsVerification) {
    auto f = gf::Field::create(5, 1);
    Graph two_triangles = Graph::from_edges(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
    auto b = construct_ball_power(two_triangles, supply::supply_mds(f, 4, 6), 2);
    EXPECT_FALSE(strong(b, 2));
}

TEST(Neighborhood, CompleteGraphMatchesBallPower) {
    Graph k6 = expander::complete_graph(6);
    for (std::uint32_t s = 1; s <= 3; ++s)
        EXPECT_EQ(neighborhood_hypergraph(k6, s).edges(), ball_power_hypergraph(k6, s, BallReading::center).edges());
}

TEST(Neighborhood, StarSpansIffSupplySpans) {
    auto f = gf::Field::create(5, 1);
    std::vector<std::pair<expander::Vertex, expander::Vertex>> e;
    for (expander::Vertex v = 1; v < 6; ++v) e.emplace_back(0, v);
    Graph star = Graph::from_edges(6, e);
    EXPECT_EQ(neighborhood_hypergraph(star, 1).num_edges(), 15u);
    EXPECT_TRUE(strong(construct_neighborhood(star, supply::supply_mds(f, 3, 6), 1), 1));
    // all six points on the line z = 0
    MatrixGF flat(f, 3, 6);
    for (std::uint32_t a = 0; a < 5; ++a) {
        flat(0, a) = 1;
        flat(1, a) = a;
    }
    flat(1, 5) = 1;
    auto b = construct_neighborhood(star, PointSupply(flat, Provenance::file), 1);
    EXPECT_FALSE(strong(b, 1));
}

TEST(Neighborhood, TooFewNeighbours) {
    EXPECT_EQ(neighborhood_hypergraph(expander::cycle_graph(6), 3).num_edges(), 0u);
    EXPECT_EQ(neighborhood_hypergraph(expander::cycle_graph(6), 2).num_edges(), 6u);
}

TEST(Construct, VerifiedSetsRespectLowerBound) {
    auto f = gf::Field::create(3, 1);
    Rng rng(9);
    int verified = 0;
    for (int t = 0; t < 12; ++t) {
        PointSupply w = supply::supply_random_verified(f, 3, 6, 1, 6, 100 + t, 50);
        Graph g = expander::cycle_graph(6);
        for (auto b : {construct_ball_power(g, w, 1), construct_neighborhood(g, w, 1),
                       construct_ball_power(g, w, 1, BallReading::pairwise)}) {
            if (!strong(b, 1)) continue;
            ++verified;
            EXPECT_GE(b.size(), lower_bound(3, 3, 1));
        }
    }
    EXPECT_GT(verified, 0);
}
