#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "graph.hpp"
#include "random.hpp"

namespace blockforge::expander {

enum class SpectralMethod { exact, power_iteration };

inline const char* to_string(SpectralMethod m) {
    return m == SpectralMethod::exact ? "exact" : "power-iteration";
}

struct SpectralReport {
    std::uint32_t n = 0;
    std::uint32_t d = 0;
    double lambda_bound = 0;  // max |eigenvalue| other than d (and -d when bipartite)
    SpectralMethod method = SpectralMethod::exact;
    bool bipartite = false;
    double tolerance = 0;
    double residual = 0;       // power iteration only
    std::uint64_t iterations = 0;
    bool converged = true;
};

struct SpectralOptions {
    double tol = 1e-6;
    std::uint32_t dense_limit = 2000;
    std::uint64_t max_iterations = 200000;
    std::uint64_t seed = 0;
};

namespace detail {

/// y = A x over the adjacency lists.
inline void adjacency_apply(const Graph& g, const std::vector<double>& x, std::vector<double>& y) {
    for (Vertex u = 0; u < g.num_vertices(); ++u) {
        double acc = 0;
        for (Vertex v : g.neighbors(u)) acc += x[v];
        y[u] = acc;
    }
}

/// Removes the components along the all-ones vector and, for bipartite graphs,
/// the side-sign vector: the eigenvectors of d and -d.
inline void deflate(std::vector<double>& x, const std::vector<int>* sides) {
    const double n = static_cast<double>(x.size());
    double mean = 0;
    for (double v : x) mean += v;
    mean /= n;
    for (double& v : x) v -= mean;
    if (sides) {
        double signed_mean = 0;
        for (std::size_t i = 0; i < x.size(); ++i) signed_mean += (*sides)[i] ? -x[i] : x[i];
        signed_mean /= n;
        for (std::size_t i = 0; i < x.size(); ++i) x[i] -= (*sides)[i] ? -signed_mean : signed_mean;
    }
}

inline double norm(const std::vector<double>& x) {
    double s = 0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

}  // namespace detail

/// Largest |eigenvalue| of the adjacency matrix other than the trivial +-d.
/// Dense eigensolve up to `dense_limit` vertices, otherwise power iteration on A^2
/// restricted to the complement of the trivial eigenvectors; the power-iteration
/// bound is the Rayleigh estimate plus `tol`.
inline SpectralReport second_eigenvalue(const Graph& g, const SpectralOptions& opt = {}) {
    auto deg = g.regular_degree();
    if (!deg) throw std::invalid_argument("second_eigenvalue: graph is not regular");
    if (!is_connected(g)) throw std::invalid_argument("second_eigenvalue: graph is not connected");
    const std::uint32_t n = g.num_vertices();
    auto sides = bipartition(g);

    SpectralReport rep;
    rep.n = n;
    rep.d = static_cast<std::uint32_t>(*deg);
    rep.bipartite = sides.has_value();
    rep.tolerance = opt.tol;

    if (n <= opt.dense_limit) {
        rep.method = SpectralMethod::exact;
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v : g.neighbors(u)) a(u, v) = 1.0;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
        std::vector<double> ev(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
        std::sort(ev.begin(), ev.end());
        std::size_t lo = rep.bipartite ? 1 : 0, hi = n - 1;  // drop +d, and -d when bipartite
        double best = 0;
        for (std::size_t i = lo; i < hi; ++i) best = std::max(best, std::abs(ev[i]));
        rep.lambda_bound = best;
        return rep;
    }

    rep.method = SpectralMethod::power_iteration;
    const std::vector<int>* side_ptr = sides ? &*sides : nullptr;
    Rng rng(opt.seed);
    std::vector<double> x(n), y(n), z(n);
    for (double& v : x) v = 2.0 * uniform_unit(rng) - 1.0;
    detail::deflate(x, side_ptr);
    double nx = detail::norm(x);
    for (double& v : x) v /= nx;

    double theta = 0;
    rep.converged = false;
    for (std::uint64_t it = 1; it <= opt.max_iterations; ++it) {
        detail::adjacency_apply(g, x, y);
        detail::adjacency_apply(g, y, z);
        detail::deflate(z, side_ptr);
        // x is unit, so x^T A^2 x = |A x|^2
        double ny = detail::norm(y);
        double rayleigh = ny * ny;
        theta = std::sqrt(rayleigh);
        double r2 = 0;
        for (Vertex i = 0; i < n; ++i) {
            double e = z[i] - rayleigh * x[i];
            r2 += e * e;
        }
        // an eigenvalue mu of A^2 lies within |r| of theta^2, so |lambda| lies within |r| / (2 theta)
        rep.residual = theta > 0 ? std::sqrt(r2) / (2.0 * theta) : std::sqrt(r2);
        rep.iterations = it;
        if (rep.residual <= opt.tol) {
            rep.converged = true;
            break;
        }
        double nz = detail::norm(z);
        if (nz == 0) {
            rep.converged = true;
            break;
        }
        for (Vertex i = 0; i < n; ++i) x[i] = z[i] / nz;
    }
    rep.lambda_bound = theta + opt.tol;
    return rep;
}

struct MixingReport {
    std::uint64_t trials = 0;
    std::uint64_t single_violations = 0;  // |2e(G[U]) - d|U|^2/n| > lambda |U|
    std::uint64_t pair_violations = 0;    // |e(U,V) - d|U||V|/n| > lambda sqrt(|U||V|)
    double max_ratio_single = 0;
    double max_ratio_pair = 0;

    bool passed() const noexcept { return single_violations == 0 && pair_violations == 0; }
};

/// Samples `trials` random U and `trials` random disjoint pairs (U, V) and tests
/// both expander mixing inequalities with the given lambda.
inline MixingReport check_mixing(const Graph& g, double lambda, std::uint64_t trials, std::uint64_t seed = 0) {
    auto deg = g.regular_degree();
    if (!deg) throw std::invalid_argument("check_mixing: graph is not regular");
    const std::uint32_t n = g.num_vertices();
    if (n < 2) throw std::invalid_argument("check_mixing: need at least two vertices");
    const long double d = static_cast<long double>(*deg);
    // floating slack only; the inequality itself is not loosened
    constexpr long double kRel = 1e-12L;

    Rng rng(seed);
    MixingReport rep;
    rep.trials = trials;
    std::vector<std::uint8_t> mark(n);
    std::vector<Vertex> perm(n);
    for (Vertex i = 0; i < n; ++i) perm[i] = i;

    for (std::uint64_t t = 0; t < trials; ++t) {
        // single set
        {
            const auto size = static_cast<std::uint32_t>(1 + uniform_below(rng, n));
            for (std::uint32_t i = 0; i < size; ++i) std::swap(perm[i], perm[i + uniform_below(rng, n - i)]);
            std::fill(mark.begin(), mark.end(), 0);
            for (std::uint32_t i = 0; i < size; ++i) mark[perm[i]] = 1;
            std::uint64_t twice_edges = 0;
            for (std::uint32_t i = 0; i < size; ++i)
                for (Vertex w : g.neighbors(perm[i])) twice_edges += mark[w];
            const long double u = size;
            const long double lhs = std::fabs(static_cast<long double>(twice_edges) - d / n * u * u);
            const long double rhs = static_cast<long double>(lambda) * u;
            const double ratio = rhs > 0 ? static_cast<double>(lhs / rhs) : (lhs > 0 ? INFINITY : 0.0);
            rep.max_ratio_single = std::max(rep.max_ratio_single, ratio);
            if (lhs > rhs * (1 + kRel)) ++rep.single_violations;
        }
        // disjoint pair
        {
            const auto a = static_cast<std::uint32_t>(1 + uniform_below(rng, n - 1));
            const auto b = static_cast<std::uint32_t>(1 + uniform_below(rng, n - a));
            for (std::uint32_t i = 0; i < a + b; ++i) std::swap(perm[i], perm[i + uniform_below(rng, n - i)]);
            std::fill(mark.begin(), mark.end(), 0);
            for (std::uint32_t i = a; i < a + b; ++i) mark[perm[i]] = 1;
            std::uint64_t cross = 0;
            for (std::uint32_t i = 0; i < a; ++i)
                for (Vertex w : g.neighbors(perm[i])) cross += mark[w];
            const long double lhs = std::fabs(static_cast<long double>(cross) - d / n * a * b);
            const long double rhs = static_cast<long double>(lambda) * std::sqrt(static_cast<long double>(a) * b);
            const double ratio = rhs > 0 ? static_cast<double>(lhs / rhs) : (lhs > 0 ? INFINITY : 0.0);
            rep.max_ratio_pair = std::max(rep.max_ratio_pair, ratio);
            if (lhs > rhs * (1 + kRel)) ++rep.pair_violations;
        }
    }
    return rep;
}

}  // namespace blockforge::expander
