#include <gtest/gtest.h>

#include <blockforge/construct.hpp>
#include <blockforge/graph.hpp>
#include <blockforge/random.hpp>
#include <blockforge/verify.hpp>

#include "oracles.hpp"

using namespace blockforge;
using namespace blockforge::verify;
using construct::BlockingSet;
using linalg::MatrixGF;

namespace {

oracle::NaiveField naive(const gf::Field& f) { return {f.p(), f.m(), f.modulus()}; }

BlockingSet random_set(const gf::Field& f, std::uint32_t k, Rng& rng, double keep) {
    auto all = construct::projective_space(f, k).points();
    std::vector<linalg::Vector> pts;
    for (auto& p : all)
        if (uniform_unit(rng) < keep) pts.push_back(p);
    if (pts.empty()) pts.push_back(all.front());
    return BlockingSet(f, k, pts);
}

// rank of B & ker(Q) with schoolbook arithmetic
std::size_t oracle_intersection_rank(const BlockingSet& b, const MatrixGF& q) {
    auto f = naive(b.field());
    std::vector<oracle::Vec> inside;
    for (const auto& p : b.points()) {
        bool zero = true;
        for (std::size_t r = 0; r < q.rows() && zero; ++r) {
            std::uint32_t acc = 0;
            for (std::size_t c = 0; c < q.cols(); ++c) acc = f.add(acc, f.mul(q(r, c), p[c]));
            zero = acc == 0;
        }
        if (zero) inside.push_back(p);
    }
    return oracle::rank(f, inside, b.k());
}

void expect_valid_counterexample(const BlockingSet& b, const VerificationReport& rep) {
    ASSERT_FALSE(rep.passed);
    ASSERT_TRUE(rep.counterexample.has_value());
    const auto& cx = *rep.counterexample;
    EXPECT_EQ(cx.quotient.rows(), rep.s);
    EXPECT_EQ(linalg::rank(cx.quotient), rep.s);
    EXPECT_EQ(cx.subspace.dim(), rep.k - rep.s);
    EXPECT_LT(oracle_intersection_rank(b, cx.quotient), rep.k - rep.s);
    EXPECT_EQ(oracle_intersection_rank(b, cx.quotient), cx.achieved_rank);
}

// every coset v + L with dim L = k - c meets A
bool oracle_affine(const AffinePointSet& a, std::uint32_t c) {
    auto f = naive(a.field);
    std::set<oracle::Vec> pts(a.points.begin(), a.points.end());
    for (const auto& l : oracle::subspaces(f, a.k, a.k - c))
        for (const auto& v : oracle::all_vectors(f, a.k)) {
            bool met = false;
            for (const auto& x : l) {
                oracle::Vec y(a.k);
                for (std::size_t i = 0; i < a.k; ++i) y[i] = f.add(v[i], x[i]);
                if (pts.count(y)) {
                    met = true;
                    break;
                }
            }
            if (!met) return false;
        }
    return true;
}

}  // namespace

TEST(Verify, WholeSpacePasses) {
    struct Case {
        std::uint32_t p, m, k;
    };
    for (auto c : {Case{2, 1, 3}, Case{2, 1, 4}, Case{3, 1, 3}, Case{2, 2, 3}, Case{5, 1, 3}}) {
        auto f = gf::Field::create(c.p, c.m);
        auto b = construct::projective_space(f, c.k);
        for (std::uint32_t s = 1; s < c.k; ++s) {
            auto rep = is_strong_blocking(b, s);
            EXPECT_TRUE(rep.passed);
            EXPECT_EQ(rep.subspaces_checked, linalg::gaussian_binomial(c.k, c.k - s, f.q()));
            EXPECT_EQ(rep.subspaces_checked, rep.subspaces_total);
            EXPECT_FALSE(rep.counterexample.has_value());
        }
    }
}

TEST(Verify, HyperplaneFails) {
    auto f = gf::Field::create(3, 1);
    std::vector<linalg::Vector> h0;
    const auto pg = construct::projective_space(f, 4);
    for (const auto& p : pg.points())
        if (p[0] == 0) h0.push_back(p);
    BlockingSet b(f, 4, h0);
    auto rep = is_strong_blocking(b, 1);
    expect_valid_counterexample(b, rep);
    EXPECT_EQ(rep.counterexample->achieved_rank, 2u);
    EXPECT_FALSE(rep.counterexample->subspace.contains(linalg::Vector{0, 1, 0, 0}) &&
                 rep.counterexample->subspace.contains(linalg::Vector{0, 0, 1, 0}) &&
                 rep.counterexample->subspace.contains(linalg::Vector{0, 0, 0, 1}));
    EXPECT_EQ(rep.subspaces_checked, rep.counterexample->index + 1);

    auto sampled = is_strong_blocking_sampled(b, 1, 50, 3);
    EXPECT_FALSE(sampled.passed);
    EXPECT_LE(sampled.subspaces_checked, 10u);
    expect_valid_counterexample(b, sampled);
}

TEST(Verify, AgreesWithBruteForceOracle) {
    Rng rng(61);
    struct Case {
        std::uint32_t p, k;
        double keep;
    };
    int passes = 0, fails = 0;
    for (auto c : {Case{2, 3, 0.7}, Case{2, 4, 0.8}, Case{3, 3, 0.7}}) {
        auto f = gf::Field::create(c.p, 1);
        for (int t = 0; t < 25; ++t) {
            auto b = random_set(f, c.k, rng, c.keep);
            std::vector<oracle::Vec> pts(b.points().begin(), b.points().end());
            for (std::uint32_t s = 1; s < c.k; ++s) {
                auto rep = is_strong_blocking(b, s);
                ASSERT_EQ(rep.passed, oracle::strong_blocking(naive(f), pts, c.k, s));
                if (rep.passed) {
                    ++passes;
                    EXPECT_TRUE(is_strong_blocking_sampled(b, s, 40, t).passed);
                } else {
                    ++fails;
                    expect_valid_counterexample(b, rep);
                }
            }
        }
    }
    EXPECT_GT(passes, 5);
    EXPECT_GT(fails, 5);
}

TEST(Verify, ShardCountDoesNotChangeTheReport) {
    Rng rng(13);
    auto f = gf::Field::create(3, 1);
    for (int t = 0; t < 10; ++t) {
        auto b = random_set(f, 4, rng, 0.8);
        for (bool count : {false, true}) {
            VerifyOptions one;
            one.count_failures = count;
            auto ref = is_strong_blocking(b, 2, one);
            for (unsigned jobs : {2u, 3u, 7u}) {
                VerifyOptions opt = one;
                opt.jobs = jobs;
                auto rep = is_strong_blocking(b, 2, opt);
                EXPECT_EQ(rep.passed, ref.passed);
                EXPECT_EQ(rep.subspaces_checked, ref.subspaces_checked);
                EXPECT_EQ(rep.failures, ref.failures);
                ASSERT_EQ(rep.counterexample.has_value(), ref.counterexample.has_value());
                if (rep.counterexample) {
                    EXPECT_EQ(rep.counterexample->index, ref.counterexample->index);
                    EXPECT_EQ(rep.counterexample->quotient, ref.counterexample->quotient);
                }
            }
        }
    }
}

TEST(Verify, CountFailuresMatchesOracleCount) {
    auto f = gf::Field::create(2, 1);
    BlockingSet b(f, 3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    VerifyOptions opt;
    opt.count_failures = true;
    auto rep = is_strong_blocking(b, 1, opt);
    // of the 7 lines of PG(2,2), exactly the 3 coordinate lines contain two of the points
    ASSERT_TRUE(rep.failures.has_value());
    EXPECT_EQ(*rep.failures, 4u);
    EXPECT_EQ(rep.subspaces_checked, 7u);
    EXPECT_EQ(rep.counterexample->index, is_strong_blocking(b, 1).counterexample->index);
}

TEST(Verify, RangeBudgetAndSampledDeterminism) {
    auto f = gf::Field::create(7, 1);
    auto b = construct::projective_space(gf::Field::create(2, 1), 3);
    EXPECT_THROW(is_strong_blocking(b, 0), std::invalid_argument);
    EXPECT_THROW(is_strong_blocking(b, 3), std::invalid_argument);
    EXPECT_THROW(is_strong_blocking_sampled(b, 1, 0, 1), std::invalid_argument);
    BlockingSet big(f, 6, {{1, 0, 0, 0, 0, 0}});
    VerifyOptions opt;
    opt.budget = 1000;
    EXPECT_THROW(is_strong_blocking(big, 3, opt), BudgetExceeded);

    Rng rng(4);
    auto r = random_set(gf::Field::create(3, 1), 4, rng, 0.5);
    auto a = is_strong_blocking_sampled(r, 2, 30, 99);
    auto c = is_strong_blocking_sampled(r, 2, 30, 99);
    EXPECT_EQ(a.passed, c.passed);
    EXPECT_EQ(a.subspaces_checked, c.subspaces_checked);
    if (a.counterexample) {
        EXPECT_EQ(a.counterexample->quotient, c.counterexample->quotient);
    }
    EXPECT_EQ(a.mode, Mode::sampled);
}

TEST(Affine, SizesAndCherryExample) {
    auto f5 = gf::Field::create(5, 1);
    auto cherry = construct::construct_cherry(expander::complete_graph(4), supply::supply_mds(f5, 3, 4));
    auto a = to_affine_blocking(cherry);
    EXPECT_EQ(a.points.size(), 4 * cherry.size() + 1);
    EXPECT_TRUE(verify_affine_blocking(a, 3).passed);

    auto f2 = gf::Field::create(2, 1);
    BlockingSet b(f2, 3, {{1, 0, 0}, {0, 1, 1}});
    auto a2 = to_affine_blocking(b);
    EXPECT_EQ(a2.points.size(), 3u);
    EXPECT_EQ(a2.points[0], (linalg::Vector{0, 0, 0}));
    EXPECT_THROW(to_affine_blocking(BlockingSet(f2, 3, {})), std::invalid_argument);
    EXPECT_THROW(verify_affine_blocking(a2, 0), std::invalid_argument);
}

TEST(Affine, MatchesCosetOracle) {
    Rng rng(71);
    int passes = 0, fails = 0;
    for (auto [p, k] : {std::pair{2u, 3u}, {3u, 2u}, {3u, 3u}, {2u, 4u}}) {
        auto f = gf::Field::create(p, 1);
        for (int t = 0; t < 12; ++t) {
            auto b = random_set(f, k, rng, 0.6);
            auto a = to_affine_blocking(b);
            for (std::uint32_t c = 1; c <= k; ++c) {
                auto rep = verify_affine_blocking(a, c);
                ASSERT_EQ(rep.passed, oracle_affine(a, c));
                rep.passed ? ++passes : ++fails;
                if (!rep.passed) {
                    // the reported coset {x : Qx = y} really is missed
                    const auto& [q, y] = *rep.counterexample;
                    for (const auto& x : a.points) EXPECT_NE(linalg::apply(q, x), y);
                }
            }
        }
    }
    EXPECT_GT(passes, 5);
    EXPECT_GT(fails, 5);
}

TEST(Affine, StrongBlockingImpliesAffineBlocking) {
    Rng rng(72);
    int checked = 0;
    for (auto [p, k] : {std::pair{2u, 4u}, {3u, 3u}}) {
        auto f = gf::Field::create(p, 1);
        for (int t = 0; t < 20; ++t) {
            auto b = random_set(f, k, rng, 0.75);
            for (std::uint32_t s = 1; s < k; ++s) {
                if (!is_strong_blocking(b, s).passed) continue;
                EXPECT_TRUE(verify_affine_blocking(to_affine_blocking(b), s + 1).passed);
                ++checked;
            }
        }
    }
    EXPECT_GT(checked, 5);
}

TEST(MinimumSearch, SmallOptima) {
    auto f2 = gf::Field::create(2, 1);
    auto line = minimum_size_search(f2, 2, 1, 1'000'000);
    EXPECT_TRUE(line.exact);
    EXPECT_EQ(line.size, 3u);

    for (bool prune : {true, false}) {
        auto plane = minimum_size_search(f2, 3, 1, 10'000'000, prune);
        ASSERT_TRUE(plane.exact);
        EXPECT_EQ(plane.size, 6u);
        EXPECT_EQ(plane.size, plane.set.size());
        EXPECT_TRUE(is_strong_blocking(plane.set, 1).passed);
        // every 5-subset of PG(2,2) fails: checked by the oracle directly
        auto all = construct::projective_space(f2, 3).points();
        for (std::size_t skip1 = 0; skip1 < all.size(); ++skip1)
            for (std::size_t skip2 = skip1 + 1; skip2 < all.size(); ++skip2) {
                std::vector<oracle::Vec> pts;
                for (std::size_t i = 0; i < all.size(); ++i)
                    if (i != skip1 && i != skip2) pts.push_back(all[i]);
                EXPECT_FALSE(oracle::strong_blocking(naive(f2), pts, 3, 1));
            }
    }
    EXPECT_EQ(minimum_size_search(gf::Field::create(3, 1), 2, 1, 1000).size, 4u);
}

TEST(MinimumSearch, BudgetExhaustionIsInexact) {
    auto f2 = gf::Field::create(2, 1);
    auto none = minimum_size_search(f2, 3, 1, 0);
    EXPECT_FALSE(none.exact);
    EXPECT_EQ(none.size, 7u);
    EXPECT_TRUE(is_strong_blocking(none.set, 1).passed);
    auto tight = minimum_size_search(f2, 3, 1, 5, false);
    EXPECT_FALSE(tight.exact);
    EXPECT_THROW(minimum_size_search(f2, 3, 3, 10), std::invalid_argument);
    EXPECT_THROW(minimum_size_search(f2, 7, 1, 10), std::invalid_argument);
}
