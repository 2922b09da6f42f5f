#include <gtest/gtest.h>

#include <blockforge/construct.hpp>
#include <blockforge/graph.hpp>
#include <blockforge/mincode.hpp>
#include <blockforge/random.hpp>

#include "oracles.hpp"

using namespace blockforge;
using namespace blockforge::mincode;
using linalg::MatrixGF;

namespace {

oracle::NaiveField naive(const gf::Field& f) { return {f.p(), f.m(), f.modulus()}; }

MatrixGF random_matrix(const gf::Field& f, std::size_t r, std::size_t c, Rng& rng) {
    MatrixGF m(f, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = static_cast<gf::Scalar>(uniform_below(rng, f.q()));
    return m;
}

// full row rank, nonzero and projectively distinct columns
MatrixGF random_admissible(const gf::Field& f, std::uint32_t k, std::uint32_t n, Rng& rng) {
    while (true) {
        MatrixGF w = random_matrix(f, k, n, rng);
        try {
            supply::PointSupply probe(w, supply::Provenance::file);
        } catch (const std::invalid_argument&) {
            continue;
        }
        if (linalg::rank(w) == k) return w;
    }
}

std::vector<oracle::Vec> rows_of(const MatrixGF& m) {
    std::vector<oracle::Vec> out;
    for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(m.row_vector(r));
    return out;
}

// no nonzero codeword's support lies inside that of a non-proportional one
bool classical_minimal(const gf::Field& f, const MatrixGF& g) {
    auto nf = naive(f);
    auto code = oracle::span(nf, rows_of(g), g.cols());
    std::vector<oracle::Vec> words;
    for (const auto& c : code)
        if (!oracle::is_zero(c)) words.push_back(c);
    auto proportional = [&](const oracle::Vec& a, const oracle::Vec& b) {
        for (std::uint32_t l = 1; l < nf.q(); ++l) {
            bool same = true;
            for (std::size_t i = 0; i < a.size() && same; ++i) same = nf.mul(l, a[i]) == b[i];
            if (same) return true;
        }
        return false;
    };
    for (const auto& a : words)
        for (const auto& b : words) {
            if (proportional(a, b)) continue;
            bool inside = true;
            for (std::size_t i = 0; i < a.size() && inside; ++i) inside = !a[i] || b[i];
            if (inside) return false;
        }
    return true;
}

}  // namespace

TEST(Support, Examples) {
    auto f = gf::Field::create(3, 1);
    EXPECT_EQ(support(MatrixGF(f, 1, 3, {1, 1, 0})), (std::vector<std::uint32_t>{0, 1}));
    EXPECT_TRUE(support(MatrixGF(f, 0, 3)).empty());
    EXPECT_TRUE(support(MatrixGF(f, 2, 3)).empty());
}

TEST(Support, BasisInvariant) {
    Rng rng(501);
    for (int t = 0; t < 500; ++t) {
        auto f = gf::Field::create(t % 2 ? 3 : 2, 1);
        const std::size_t d = 1 + uniform_below(rng, 3), n = 2 + uniform_below(rng, 6);
        MatrixGF x = random_matrix(f, d, n, rng);
        MatrixGF change = random_matrix(f, d, d, rng);
        if (linalg::rank(change) < d) continue;
        MatrixGF y = linalg::multiply(change, x);
        ASSERT_EQ(support(x), support(y));
        auto space = oracle::span(naive(f), rows_of(x), n);
        std::vector<std::uint32_t> expect;
        for (auto i : oracle::support(space)) expect.push_back(static_cast<std::uint32_t>(i));
        ASSERT_EQ(support(x), expect);
    }
}

TEST(LinearCode, ConstructionAndDistance) {
    auto f = gf::Field::create(2, 1);
    EXPECT_THROW(LinearCode(MatrixGF(f, 2, 3, {1, 1, 0, 1, 1, 0})), std::invalid_argument);
    LinearCode id(MatrixGF::identity(f, 3));
    EXPECT_EQ(id.minimum_distance(), std::optional(1u));
    // Hamming [7,4,3] via PG(2,2) as columns of the parity check's dual: the simplex [7,3,4]
    auto simplex = blocking_to_code(construct::projective_space(f, 3));
    EXPECT_EQ(simplex.n(), 7u);
    EXPECT_EQ(simplex.k(), 3u);
    EXPECT_EQ(simplex.minimum_distance(), std::optional(4u));
}

TEST(BlockingToCode, IdentityAndNonSpanning) {
    auto f = gf::Field::create(5, 1);
    construct::BlockingSet id(f, 3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    auto code = blocking_to_code(id);
    // points are stored sorted, so the columns come out as e3, e2, e1
    EXPECT_EQ(code.generator(), MatrixGF(f, 3, 3, {0, 0, 1, 0, 1, 0, 1, 0, 0}));
    construct::BlockingSet flat(f, 3, {{1, 0, 0}, {0, 1, 0}, {1, 1, 0}});
    EXPECT_THROW(blocking_to_code(flat), std::invalid_argument);
}

TEST(Minimality, HandExamples) {
    auto f = gf::Field::create(2, 1);
    auto full = is_s_minimal(LinearCode(MatrixGF::identity(f, 2)), 1);
    EXPECT_FALSE(full.passed);
    ASSERT_TRUE(full.violating_pair.has_value());
    const auto& vp = *full.violating_pair;
    EXPECT_TRUE(std::includes(vp.support_y.begin(), vp.support_y.end(), vp.support_x.begin(), vp.support_x.end()));
    EXPECT_EQ(vp.support_x, support(vp.x));
    EXPECT_EQ(vp.support_y, support(vp.y));

    auto rep = is_s_minimal(LinearCode(MatrixGF(f, 1, 5, {1, 1, 1, 1, 1})), 1);
    EXPECT_TRUE(rep.passed);
    EXPECT_EQ(rep.subspaces_examined, 1u);

    EXPECT_THROW(is_s_minimal(LinearCode(MatrixGF::identity(f, 2)), 3), std::invalid_argument);
    EXPECT_THROW(is_s_minimal(LinearCode(MatrixGF::identity(gf::Field::create(7, 1), 6)), 3, 100), BudgetExceeded);
}

TEST(Minimality, MatchesOracle) {
    Rng rng(503);
    int passes = 0, fails = 0;
    for (int t = 0; t < 60; ++t) {
        auto f = gf::Field::create(t % 3 == 0 ? 3 : 2, 1);
        const std::uint32_t k = 2 + static_cast<std::uint32_t>(uniform_below(rng, 2));
        const std::uint32_t n = std::min<std::uint32_t>(
            k + static_cast<std::uint32_t>(uniform_below(rng, 5)),
            static_cast<std::uint32_t>(oracle::projective_points(f.q(), k)));
        MatrixGF g = random_admissible(f, k, n, rng);
        for (std::uint32_t s = 1; s < k; ++s) {
            auto rep = is_s_minimal(LinearCode(g), s);
            ASSERT_EQ(rep.passed, oracle::s_minimal(naive(f), rows_of(g), s));
            rep.passed ? ++passes : ++fails;
            if (s == 1) {
                EXPECT_EQ(rep.passed, classical_minimal(f, g));
            }
        }
    }
    EXPECT_GT(passes, 3);
    EXPECT_GT(fails, 3);
}

TEST(Duality, KnownCases) {
    auto f5 = gf::Field::create(5, 1);
    auto id = duality_check(MatrixGF::identity(f5, 3), 1);
    EXPECT_FALSE(id.strong_blocking);
    EXPECT_FALSE(id.s_minimal);

    auto cherry = construct::construct_cherry(expander::complete_graph(4), supply::supply_mds(f5, 3, 4));
    auto code = blocking_to_code(cherry);
    EXPECT_EQ(code.n(), cherry.size());
    auto d = duality_check(code.generator(), 2);
    EXPECT_TRUE(d.strong_blocking);
    EXPECT_TRUE(d.s_minimal);

    EXPECT_THROW(duality_check(MatrixGF(f5, 2, 2, {1, 2, 0, 0}), 1), std::invalid_argument);
}

TEST(Duality, RandomSweep) {
    Rng rng(2024);
    int agree_true = 0, agree_false = 0;
    for (int t = 0; t < 100; ++t) {
        auto f = gf::Field::create(t % 2 ? 3 : 2, 1);
        const std::uint32_t s = 1 + static_cast<std::uint32_t>(uniform_below(rng, 2));
        const std::uint32_t k = s + 1 + static_cast<std::uint32_t>(uniform_below(rng, 4 - s));
        const auto cap = static_cast<std::uint32_t>(oracle::projective_points(f.q(), k));
        const std::uint32_t n = std::min<std::uint32_t>(cap, k + static_cast<std::uint32_t>(uniform_below(rng, 9 - k)));
        DualityResult r;
        ASSERT_NO_THROW(r = duality_check(random_admissible(f, k, n, rng), s));
        r.strong_blocking ? ++agree_true : ++agree_false;
    }
    EXPECT_GT(agree_true, 0);
    EXPECT_GT(agree_false, 0);
}
