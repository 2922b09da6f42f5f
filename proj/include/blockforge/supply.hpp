#pragma once

// Point supplies: vector sets W in F_q^k consumed by the constructions, with the
// two general-position parameters they rely on measured rather than assumed.
//
//   s_independence  largest s such that every s+1 columns are independent
//                   (dual distance - 2, capped at k-1)
//   span_threshold  smallest t such that every t columns span F_q^k
//                   (n - d + 1 with d the minimum distance of the row code)

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "budget.hpp"
#include "combinatorics.hpp"
#include "matrix.hpp"
#include "random.hpp"

namespace blockforge::supply {

using linalg::MatrixGF;
using linalg::Vector;
using gf::Field;
using gf::Scalar;

enum class Provenance { mds, random_verified, file };
enum class CheckMethod { exhaustive, sampled };

inline const char* to_string(Provenance p) {
    switch (p) {
        case Provenance::mds: return "mds";
        case Provenance::random_verified: return "random-verified";
        case Provenance::file: return "file";
    }
    return "?";
}
inline Provenance provenance_from_string(const std::string& s) {
    if (s == "mds") return Provenance::mds;
    if (s == "random-verified") return Provenance::random_verified;
    if (s == "file") return Provenance::file;
    throw std::invalid_argument("supply: unknown provenance '" + s + "'");
}
inline const char* to_string(CheckMethod m) { return m == CheckMethod::exhaustive ? "exhaustive" : "sampled"; }

struct GeneralPositionReport {
    std::uint32_t s_independence = 0;
    std::uint32_t span_threshold = 0;  // n + 1 when the columns do not span F_q^k
    CheckMethod method = CheckMethod::exhaustive;
    std::uint32_t requested_s = 0;
    std::uint32_t requested_t = 0;
    bool meets_request = false;

    friend bool operator==(const GeneralPositionReport&, const GeneralPositionReport&) = default;
};

/// k x n matrix whose columns are nonzero and pairwise projectively distinct.
class PointSupply {
public:
    PointSupply(MatrixGF points, Provenance provenance) : points_(std::move(points)), provenance_(provenance) {
        const Field& f = points_.field();
        std::set<Vector> seen;
        for (std::size_t c = 0; c < points_.cols(); ++c) {
            Vector v = points_.column(c);
            if (linalg::is_zero_vector(v)) throw std::invalid_argument("supply: column " + std::to_string(c) + " is zero");
            linalg::normalize(f, v);
            if (!seen.insert(v).second)
                throw std::invalid_argument("supply: column " + std::to_string(c) + " repeats a projective point");
        }
    }

    const Field& field() const noexcept { return points_.field(); }
    const MatrixGF& points() const noexcept { return points_; }
    std::uint32_t k() const noexcept { return static_cast<std::uint32_t>(points_.rows()); }
    std::uint32_t n() const noexcept { return static_cast<std::uint32_t>(points_.cols()); }
    Vector point(std::size_t i) const { return points_.column(i); }
    Provenance provenance() const noexcept { return provenance_; }

    const std::optional<GeneralPositionReport>& report() const noexcept { return report_; }
    void set_report(GeneralPositionReport r) { report_ = r; }

    /// Sub-supply on the given columns, in the given order.
    PointSupply select(const std::vector<std::uint32_t>& idx) const {
        return PointSupply(points_.select_cols(idx), provenance_);
    }

private:
    MatrixGF points_;
    Provenance provenance_;
    std::optional<GeneralPositionReport> report_;
};

struct GeneralPositionOptions {
    std::uint64_t budget = 10'000'000;  // subsets / messages examined exhaustively
    std::uint64_t samples = 100'000;
    std::uint64_t seed = 0;
};

namespace detail {

inline bool columns_independent(const MatrixGF& w, const std::vector<std::uint32_t>& cols) {
    return linalg::rank(w.select_cols(cols)) == cols.size();
}

inline std::uint32_t weight(std::span<const Scalar> v) {
    std::uint32_t c = 0;
    for (auto x : v) c += x != 0;
    return c;
}

/// u^T W for a message u.
inline Vector encode_message(const MatrixGF& w, std::span<const Scalar> u) {
    const Field& f = w.field();
    Vector out(w.cols(), 0);
    for (std::size_t r = 0; r < w.rows(); ++r) {
        if (u[r] == 0) continue;
        for (std::size_t c = 0; c < w.cols(); ++c) out[c] = f.fma(u[r], w(r, c), out[c]);
    }
    return out;
}

/// Visits every normalized nonzero vector of F_q^len; fn returns false to stop.
template <class Fn>
void for_each_projective(const Field& f, std::size_t len, Fn&& fn) {
    const Scalar q = f.q();
    Vector v(len, 0);
    for (std::size_t lead = len; lead-- > 0;) {
        std::fill(v.begin(), v.end(), 0);
        v[lead] = 1;
        while (true) {
            if (!fn(static_cast<const Vector&>(v))) return;
            std::size_t i = len;
            bool carried = true;
            while (carried && i-- > lead + 1) {
                if (++v[i] < q) carried = false;
                else v[i] = 0;
            }
            if (carried) break;
        }
    }
}

inline std::uint64_t saturating_pow(std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < e; ++i) {
        if (r > std::numeric_limits<std::uint64_t>::max() / b) return std::numeric_limits<std::uint64_t>::max();
        r *= b;
    }
    return r;
}

}  // namespace detail

/// Minimum Hamming weight of the row space of W (0 when W is rank-deficient).
/// Exhaustive over projective messages; nullopt when q^k exceeds the budget.
inline std::optional<std::uint32_t> min_distance_exhaustive(const MatrixGF& w, std::uint64_t budget) {
    if (detail::saturating_pow(w.field().q(), w.rows()) > budget) return std::nullopt;
    std::uint32_t best = static_cast<std::uint32_t>(w.cols());
    detail::for_each_projective(w.field(), w.rows(), [&](const Vector& u) {
        best = std::min(best, detail::weight(detail::encode_message(w, u)));
        return best > 0;
    });
    return best;
}

/// Smallest number of linearly dependent columns, by ranks of column subsets.
/// nullopt when every subset is independent (the dual code is zero).
inline std::optional<std::uint32_t> dual_distance_by_columns(const MatrixGF& w) {
    const auto n = static_cast<std::uint32_t>(w.cols());
    for (std::uint32_t j = 1; j <= n; ++j) {
        bool found = false;
        for_each_combination(n, j, [&](const std::vector<std::uint32_t>& c) {
            if (!detail::columns_independent(w, c)) found = true;
            return !found;
        });
        if (found) return j;
    }
    return std::nullopt;
}

/// Minimum weight of the dual code {x : W x = 0}, by enumerating its codewords.
inline std::optional<std::uint32_t> dual_distance_by_enumeration(const MatrixGF& w) {
    MatrixGF h = linalg::null_space(w);
    if (h.rows() == 0) return std::nullopt;
    return min_distance_exhaustive(h, std::numeric_limits<std::uint64_t>::max());
}

/// Smallest t such that every t columns span F_q^k (n + 1 if W has rank < k), by
/// subset ranks. nullopt once the subsets examined would exceed the budget.
inline std::optional<std::uint32_t> span_threshold_by_subsets(const MatrixGF& w, std::uint64_t budget) {
    const auto k = static_cast<std::uint32_t>(w.rows()), n = static_cast<std::uint32_t>(w.cols());
    if (linalg::rank(w) < k) return n + 1;
    std::uint64_t spent = 0;
    for (std::uint32_t t = k; t <= n; ++t) {
        spent += binomial(n, t);
        if (spent > budget) return std::nullopt;
        bool all = true;
        for_each_combination(n, t, [&](const std::vector<std::uint32_t>& c) {
            all = linalg::rank(w.select_cols(c)) == k;
            return all;
        });
        if (all) return t;
    }
    return n;
}

/// Measures s_independence and span_threshold. Exhaustive when the subset and
/// message counts fit the budget, else sampled with the report flagged.
inline GeneralPositionReport verify_general_position(const PointSupply& supply, std::uint32_t s, std::uint32_t t,
                                                     const GeneralPositionOptions& opt = {}) {
    const MatrixGF& w = supply.points();
    const std::uint32_t k = supply.k(), n = supply.n();
    GeneralPositionReport rep;
    rep.requested_s = s;
    rep.requested_t = t;
    Rng rng(opt.seed);

    // independence: largest j with every j-subset independent, reported as j - 1
    std::uint32_t s_ind = k >= 1 ? k - 1 : 0;
    for (std::uint32_t j = 2; j <= k; ++j) {
        if (j > n) break;  // vacuous beyond n
        bool ok = true;
        if (binomial(n, j) <= opt.budget) {
            for_each_combination(n, j, [&](const std::vector<std::uint32_t>& c) {
                ok = detail::columns_independent(w, c);
                return ok;
            });
        } else {
            rep.method = CheckMethod::sampled;
            for (std::uint64_t i = 0; i < opt.samples && ok; ++i)
                ok = detail::columns_independent(w, random_subset(rng, n, j));
        }
        if (!ok) {
            s_ind = j - 2;
            break;
        }
    }
    rep.s_independence = s_ind;

    // span threshold = n - d + 1 for the minimum distance d of the row code;
    // column subsets are the cheaper exact route when q^k is large
    if (auto exact = min_distance_exhaustive(w, opt.budget)) {
        rep.span_threshold = n - *exact + 1;
    } else if (auto by_subsets = span_threshold_by_subsets(w, opt.budget)) {
        rep.span_threshold = *by_subsets;
    } else {
        rep.method = CheckMethod::sampled;
        // sampling can only miss light codewords; Singleton caps d at n - k + 1
        std::uint32_t d = n - std::min(n, k) + 1;
        Vector u(k);
        for (std::uint64_t i = 0; i < opt.samples && d > 0; ++i) {
            for (auto& x : u) x = static_cast<Scalar>(uniform_below(rng, supply.field().q()));
            if (linalg::is_zero_vector(u)) continue;
            d = std::min(d, detail::weight(detail::encode_message(w, u)));
        }
        rep.span_threshold = n - d + 1;
    }
    rep.meets_request = rep.s_independence >= s && rep.span_threshold <= t;
    return rep;
}

/// Extended Reed-Solomon columns (1, a, ..., a^{k-1}) for the first n field
/// elements a = 0, 1, ...; with n = q + 1 the point e_k is appended.
inline PointSupply supply_mds(const Field& f, std::uint32_t k, std::uint32_t n) {
    if (k < 1) throw std::invalid_argument("supply_mds: k must be >= 1");
    if (n < 1) throw std::invalid_argument("supply_mds: n must be >= 1");
    if (static_cast<std::uint64_t>(n) > static_cast<std::uint64_t>(f.q()) + 1)
        throw std::invalid_argument("supply_mds: need q >= n - 1 (q = " + std::to_string(f.q()) + ", n = " +
                                    std::to_string(n) + ")");
    MatrixGF w(f, k, n);
    const std::uint32_t finite = std::min(n, f.q());
    for (std::uint32_t c = 0; c < finite; ++c) {
        Scalar x = 1;
        for (std::uint32_t r = 0; r < k; ++r) {
            w(r, c) = x;
            x = f.mul(x, c);
        }
    }
    if (n == f.q() + 1) w(k - 1, n - 1) = 1;
    return PointSupply(std::move(w), Provenance::mds);
}

/// Random columns until a draw passes verify_general_position with the requested (s, t).
inline PointSupply supply_random_verified(const Field& f, std::uint32_t k, std::uint32_t n, std::uint32_t s,
                                          std::uint32_t t, std::uint64_t seed, std::uint32_t max_tries,
                                          const GeneralPositionOptions& opt = {}) {
    if (s >= k) throw std::invalid_argument("supply_random: s >= k (k+1 vectors in F_q^k are never independent)");
    if (n < k) throw std::invalid_argument("supply_random: need n >= k");
    if (t < k || t > n) throw std::invalid_argument("supply_random: need k <= t <= n");
    const std::uint64_t projective = (detail::saturating_pow(f.q(), k) - 1) / (f.q() - 1);
    if (n > projective) throw std::invalid_argument("supply_random: more points requested than PG(k-1,q) has");
    Rng rng(seed);
    for (std::uint32_t attempt = 0; attempt < max_tries; ++attempt) {
        MatrixGF w(f, k, n);
        std::set<Vector> seen;
        for (std::uint32_t c = 0; c < n; ++c) {
            Vector v(k);
            do {
                for (auto& x : v) x = static_cast<Scalar>(uniform_below(rng, f.q()));
                if (linalg::is_zero_vector(v)) continue;
                Vector norm = v;
                linalg::normalize(f, norm);
                if (seen.insert(norm).second) break;
            } while (true);
            for (std::uint32_t r = 0; r < k; ++r) w(r, c) = v[r];
        }
        PointSupply candidate(std::move(w), Provenance::random_verified);
        auto rep = verify_general_position(candidate, s, t, opt);
        if (rep.meets_request) {
            candidate.set_report(rep);
            return candidate;
        }
    }
    throw std::runtime_error("supply_random: no supply met (s=" + std::to_string(s) + ", t=" + std::to_string(t) +
                             ") within " + std::to_string(max_tries) + " tries");
}

/// Report attached to the supply, computing it (for s = t = 0 requests) when absent.
inline GeneralPositionReport ensure_report(PointSupply& supply, const GeneralPositionOptions& opt = {}) {
    if (!supply.report()) supply.set_report(verify_general_position(supply, 0, supply.n(), opt));
    return *supply.report();
}

}  // namespace blockforge::supply
