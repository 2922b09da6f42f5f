#pragma once

// Strong s-blocking verification. A codimension-s subspace L is the kernel of an
// s x k RREF matrix Q, so enumerating those Q visits every L exactly once and
// B & L is {b : Q b = 0}.

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "budget.hpp"
#include "construct.hpp"
#include "matrix.hpp"
#include "parallel.hpp"
#include "random.hpp"
#include "subspace.hpp"

namespace blockforge::verify {

using construct::BlockingSet;
using gf::Field;
using gf::Scalar;
using linalg::MatrixGF;
using linalg::SubspaceBasis;
using linalg::Vector;

enum class Mode { exhaustive, sampled };
inline const char* to_string(Mode m) { return m == Mode::exhaustive ? "exhaustive" : "sampled"; }

struct Counterexample {
    std::uint64_t index = 0;  // enumeration index (exhaustive) or trial number (sampled)
    MatrixGF quotient;        // s x k, L = ker(quotient)
    SubspaceBasis subspace;
    std::size_t achieved_rank = 0;
};

struct VerificationReport {
    Mode mode = Mode::exhaustive;
    std::uint32_t s = 0;
    std::uint32_t k = 0;
    std::uint32_t q = 0;
    std::uint64_t num_points = 0;
    std::uint64_t subspaces_checked = 0;
    std::uint64_t subspaces_total = 0;
    bool passed = false;
    std::optional<Counterexample> counterexample;
    std::optional<std::uint64_t> failures;  // set when failures were counted exhaustively
    double wall_time = 0;                   // seconds; kept out of deterministic output
};

struct VerifyOptions {
    unsigned jobs = 1;
    std::uint64_t budget = Budgets{}.subspaces;
    bool count_failures = false;
};

namespace detail {

/// rank of {b in B : Q b = 0}, stopping once `target` is reached.
inline std::size_t intersection_rank(const Field& f, const std::vector<Vector>& points, const MatrixGF& q,
                                     std::size_t target) {
    linalg::IncrementalBasis basis(f, q.cols());
    const std::size_t s = q.rows(), k = q.cols();
    for (const auto& b : points) {
        bool inside = true;
        for (std::size_t r = 0; r < s && inside; ++r) {
            Scalar acc = 0;
            for (std::size_t c = 0; c < k; ++c)
                if (q(r, c)) acc = f.fma(q(r, c), b[c], acc);
            inside = acc == 0;
        }
        if (inside && basis.add(b) && basis.rank() >= target) break;
    }
    return basis.rank();
}

inline Counterexample make_counterexample(std::uint64_t index, const MatrixGF& q, std::size_t rank) {
    return {index, q, SubspaceBasis::from_rows(linalg::null_space(q)), rank};
}

inline void require_range(const BlockingSet& b, std::uint32_t s) {
    if (s < 1 || s >= b.k())
        throw std::invalid_argument("is_strong_blocking: need 1 <= s < k (s = " + std::to_string(s) +
                                    ", k = " + std::to_string(b.k()) + ")");
}

}  // namespace detail

/// Exhaustive check over every codimension-s subspace. On failure the reported
/// counterexample is the one with the least enumeration index, independent of jobs.
inline VerificationReport is_strong_blocking(const BlockingSet& b, std::uint32_t s, const VerifyOptions& opt = {}) {
    const auto start = std::chrono::steady_clock::now();
    detail::require_range(b, s);
    const Field& f = b.field();
    const std::uint32_t k = b.k();
    const std::size_t target = k - s;
    auto en = linalg::checked_enumerator(f, k, s, opt.budget);

    VerificationReport rep;
    rep.mode = Mode::exhaustive;
    rep.s = s;
    rep.k = k;
    rep.q = f.q();
    rep.num_points = b.size();
    rep.subspaces_total = en.count();

    struct ShardResult {
        std::optional<Counterexample> first;
        std::uint64_t failures = 0;
    };
    const unsigned jobs = std::max(1u, opt.jobs);
    auto shards = shard_ranges(en.count(), jobs);
    std::vector<ShardResult> results(shards.size());
    std::atomic<std::uint64_t> best{std::numeric_limits<std::uint64_t>::max()};
    run_shards(shards.size(), [&](std::size_t sh) {
        auto& res = results[sh];
        en.for_each(shards[sh].first, shards[sh].second,
                    [&](std::uint64_t idx, const MatrixGF& q, const std::vector<std::uint32_t>&) {
                        if (!opt.count_failures && idx > best.load(std::memory_order_relaxed)) return false;
                        const std::size_t r = detail::intersection_rank(f, b.points(), q, target);
                        if (r >= target) return true;
                        ++res.failures;
                        if (!res.first) {
                            res.first = detail::make_counterexample(idx, q, r);
                            std::uint64_t cur = best.load();
                            while (idx < cur && !best.compare_exchange_weak(cur, idx)) {
                            }
                        }
                        return opt.count_failures;
                    });
    });

    for (auto& res : results)
        if (res.first && (!rep.counterexample || res.first->index < rep.counterexample->index))
            rep.counterexample = std::move(res.first);
    rep.passed = !rep.counterexample;
    if (opt.count_failures) {
        std::uint64_t total = 0;
        for (const auto& res : results) total += res.failures;
        rep.failures = total;
        rep.subspaces_checked = en.count();
    } else {
        rep.subspaces_checked = rep.passed ? en.count() : rep.counterexample->index + 1;
    }
    rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

/// Uniformly random full-rank s x k quotient maps, canonicalized by RREF. Refutes
/// or reports that no counterexample was found; never certifies.
inline VerificationReport is_strong_blocking_sampled(const BlockingSet& b, std::uint32_t s, std::uint64_t trials,
                                                     std::uint64_t seed) {
    const auto start = std::chrono::steady_clock::now();
    detail::require_range(b, s);
    if (trials < 1) throw std::invalid_argument("is_strong_blocking_sampled: trials must be >= 1");
    const Field& f = b.field();
    const std::uint32_t k = b.k();
    const std::size_t target = k - s;
    VerificationReport rep;
    rep.mode = Mode::sampled;
    rep.s = s;
    rep.k = k;
    rep.q = f.q();
    rep.num_points = b.size();
    rep.subspaces_total = trials;
    rep.passed = true;
    Rng rng(seed);
    for (std::uint64_t t = 0; t < trials; ++t) {
        MatrixGF q(f, s, k);
        linalg::RrefResult red;
        do {
            for (std::uint32_t r = 0; r < s; ++r)
                for (std::uint32_t c = 0; c < k; ++c) q(r, c) = static_cast<Scalar>(uniform_below(rng, f.q()));
            red = linalg::rref(q);
        } while (red.rank < s);
        const std::size_t r = detail::intersection_rank(f, b.points(), red.matrix, target);
        rep.subspaces_checked = t + 1;
        if (r < target) {
            rep.passed = false;
            rep.counterexample = detail::make_counterexample(t, red.matrix, r);
            break;
        }
    }
    rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

/// Vectors of F_q^k (not projective), sorted.
struct AffinePointSet {
    Field field;
    std::uint32_t k = 0;
    std::vector<Vector> points;
};

/// {0} together with every nonzero multiple of every point of B.
inline AffinePointSet to_affine_blocking(const BlockingSet& b) {
    if (b.size() == 0) throw std::invalid_argument("to_affine_blocking: empty set");
    const Field& f = b.field();
    AffinePointSet out{f, b.k(), {}};
    out.points.reserve((f.q() - 1) * b.size() + 1);
    out.points.emplace_back(b.k(), 0);
    for (const auto& p : b.points())
        for (Scalar lambda = 1; lambda < f.q(); ++lambda) {
            Vector v(p.size());
            for (std::size_t i = 0; i < p.size(); ++i) v[i] = f.mul(lambda, p[i]);
            out.points.push_back(std::move(v));
        }
    std::sort(out.points.begin(), out.points.end());
    out.points.erase(std::unique(out.points.begin(), out.points.end()), out.points.end());
    return out;
}

struct AffineReport {
    std::uint32_t codim = 0;
    std::uint64_t linear_parts_checked = 0;
    std::uint64_t affine_subspaces_checked = 0;  // linear parts x q^codim cosets
    bool passed = false;
    std::optional<std::pair<MatrixGF, Vector>> counterexample;  // {x : Q x = y} missed by A
};

/// Every affine subspace of codimension c is {x : Q x = y} for an RREF c x k Q and
/// some y; A meets all of them iff {Q a : a in A} = F_q^c for every Q.
inline AffineReport verify_affine_blocking(const AffinePointSet& a, std::uint32_t codim,
                                           std::uint64_t budget = Budgets{}.subspaces) {
    const Field& f = a.field;
    if (codim < 1 || codim > a.k) throw std::invalid_argument("verify_affine_blocking: need 1 <= codim <= k");
    std::uint64_t cosets = 1;
    for (std::uint32_t i = 0; i < codim; ++i) cosets *= f.q();
    auto en = linalg::checked_enumerator(f, a.k, codim, budget);
    AffineReport rep;
    rep.codim = codim;
    rep.passed = true;
    std::vector<char> hit(cosets);
    en.for_each([&](std::uint64_t, const MatrixGF& q, const std::vector<std::uint32_t>&) {
        ++rep.linear_parts_checked;
        std::fill(hit.begin(), hit.end(), 0);
        std::uint64_t distinct = 0;
        for (const auto& x : a.points) {
            std::uint64_t code = 0;
            for (std::uint32_t r = 0; r < codim; ++r) {
                Scalar acc = 0;
                for (std::uint32_t c = 0; c < a.k; ++c) acc = f.fma(q(r, c), x[c], acc);
                code = code * f.q() + acc;
            }
            if (!hit[code]) {
                hit[code] = 1;
                if (++distinct == cosets) break;
            }
        }
        if (distinct == cosets) {
            rep.affine_subspaces_checked += cosets;
            return true;
        }
        std::uint64_t missed = std::find(hit.begin(), hit.end(), 0) - hit.begin();
        rep.affine_subspaces_checked += missed + 1;
        Vector y(codim);
        for (std::uint32_t r = codim; r-- > 0;) {
            y[r] = static_cast<Scalar>(missed % f.q());
            missed /= f.q();
        }
        rep.passed = false;
        rep.counterexample = std::make_pair(q, std::move(y));
        return false;
    });
    return rep;
}

struct MinimumSearchResult {
    std::uint64_t size = 0;
    BlockingSet set;
    bool exact = false;
    std::uint64_t nodes = 0;
};

/// Smallest strong s-blocking set in PG(k-1, q) by iterative deepening from the
/// lower bound, with include/exclude branching over points and a per-subspace
/// feasibility prune (chosen plus undecided points must still span every L & B).
/// `budget` caps search nodes; when it runs out the whole space is returned as an
/// upper bound flagged inexact. Without the lower-bound prune the deepening starts
/// at size 1, which makes the bound itself checkable.
inline MinimumSearchResult minimum_size_search(const Field& f, std::uint32_t k, std::uint32_t s, std::uint64_t budget,
                                               bool prune_with_lower_bound = true) {
    if (s < 1 || s >= k) throw std::invalid_argument("minimum_size_search: need 1 <= s < k");
    BlockingSet all = construct::projective_space(f, k);
    const std::size_t n = all.size();
    if (n > 64) throw std::invalid_argument("minimum_size_search: more than 64 projective points");
    const std::size_t target = k - s;

    // point masks of each codimension-s subspace
    std::vector<std::uint64_t> in_l;
    auto en = linalg::checked_enumerator(f, k, s, Budgets{}.subspaces);
    en.for_each([&](std::uint64_t, const MatrixGF& q, const std::vector<std::uint32_t>&) {
        std::uint64_t mask = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (linalg::is_zero_vector(linalg::apply(q, all.points()[i]))) mask |= std::uint64_t{1} << i;
        in_l.push_back(mask);
        return true;
    });
    auto spans_all = [&](std::uint64_t available) {
        for (auto mask : in_l) {
            linalg::IncrementalBasis basis(f, k);
            std::uint64_t m = mask & available;
            while (m && basis.rank() < target) {
                const int i = std::countr_zero(m);
                m &= m - 1;
                basis.add(all.points()[i]);
            }
            if (basis.rank() < target) return false;
        }
        return true;
    };

    MinimumSearchResult res{n, all, false, 0};
    if (budget == 0) return res;
    const std::uint64_t full = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    const std::uint64_t lb = prune_with_lower_bound ? construct::lower_bound(f.q(), k, s) : 1;
    bool out_of_budget = false;
    std::optional<std::uint64_t> found;

    for (std::uint64_t m = std::min<std::uint64_t>(lb, n); m <= n && !found && !out_of_budget; ++m) {
        // chosen: points taken; idx: next undecided point
        auto dfs = [&](auto&& self, std::size_t idx, std::uint64_t chosen, std::uint64_t count) -> bool {
            if (++res.nodes > budget) {
                out_of_budget = true;
                return false;
            }
            const std::uint64_t undecided = idx >= n ? 0 : full & ~((std::uint64_t{1} << idx) - 1);
            if (count == m) {
                if (spans_all(chosen)) {
                    found = chosen;
                    return true;
                }
                return false;
            }
            if (count + (n - idx) < m) return false;
            if (!spans_all(chosen | undecided)) return false;
            if (self(self, idx + 1, chosen | (std::uint64_t{1} << idx), count + 1)) return true;
            if (out_of_budget) return false;
            return self(self, idx + 1, chosen, count);
        };
        dfs(dfs, 0, 0, 0);
    }
    if (found) {
        std::vector<Vector> pts;
        for (std::size_t i = 0; i < n; ++i)
            if (*found >> i & 1) pts.push_back(all.points()[i]);
        res.size = pts.size();
        res.set = BlockingSet(f, k, std::move(pts), "minimum-search", {{"s", std::to_string(s)}});
        res.exact = true;
    }
    return res;
}

}  // namespace blockforge::verify
