#pragma once

// Text file formats and JSON renderings of the reports.
//
//   matrix:      field <p> <m> <c0> .. <cm>      (modulus coefficients, low first)
//                dims <rows> <cols>
//                one row per line
//   graph:       graph <n> <m>, then one "u v" edge per line
//   hypergraph:  hypergraph <n> <m>, then one edge per line
//
// Blank lines and lines starting with '#' are ignored. Supplies store points as
// columns, blocking sets as rows.

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "construct.hpp"
#include "graph.hpp"
#include "hypergraph.hpp"
#include "lincomb.hpp"
#include "matrix.hpp"
#include "mincode.hpp"
#include "spectral.hpp"
#include "supply.hpp"
#include "verify.hpp"

namespace blockforge::io {

using json = nlohmann::ordered_json;
using gf::Field;
using linalg::MatrixGF;

class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {

/// Next meaningful line split into tokens; false at end of input.
inline bool next_tokens(std::istream& in, std::vector<std::string>& tokens, std::size_t& line_no) {
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ss(line);
        tokens.clear();
        for (std::string t; ss >> t;) tokens.push_back(t);
        return true;
    }
    return false;
}

inline std::uint64_t to_uint(const std::string& s, std::size_t line_no) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || s.empty() || s[0] == '-')
        throw ParseError("line " + std::to_string(line_no) + ": expected a non-negative integer, got '" + s + "'");
    return v;
}

inline void expect(bool ok, const std::string& what, std::size_t line_no) {
    if (!ok) throw ParseError("line " + std::to_string(line_no) + ": " + what);
}

}  // namespace detail

// ---- matrices ---------------------------------------------------------------

inline void write_matrix(std::ostream& out, const MatrixGF& m) {
    const Field& f = m.field();
    out << "field " << f.p() << ' ' << f.m();
    for (auto c : f.modulus()) out << ' ' << c;
    out << "\ndims " << m.rows() << ' ' << m.cols() << '\n';
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) out << (c ? " " : "") << m(r, c);
        out << '\n';
    }
}

inline MatrixGF read_matrix(std::istream& in) {
    std::vector<std::string> t;
    std::size_t line = 0;
    detail::expect(detail::next_tokens(in, t, line), "empty matrix file", line);
    detail::expect(t.size() >= 3 && t[0] == "field", "expected 'field <p> <m> <modulus...>'", line);
    const auto p = static_cast<std::uint32_t>(detail::to_uint(t[1], line));
    const auto m = static_cast<std::uint32_t>(detail::to_uint(t[2], line));
    std::optional<std::vector<std::uint32_t>> modulus;
    if (t.size() > 3) {
        modulus.emplace();
        for (std::size_t i = 3; i < t.size(); ++i) modulus->push_back(static_cast<std::uint32_t>(detail::to_uint(t[i], line)));
    }
    Field f = Field::create(p, m, modulus);
    detail::expect(detail::next_tokens(in, t, line), "missing dims line", line);
    detail::expect(t.size() == 3 && t[0] == "dims", "expected 'dims <rows> <cols>'", line);
    const auto rows = detail::to_uint(t[1], line), cols = detail::to_uint(t[2], line);
    MatrixGF out(f, rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        detail::expect(detail::next_tokens(in, t, line), "missing matrix row", line);
        detail::expect(t.size() == cols, "row has " + std::to_string(t.size()) + " entries, expected " + std::to_string(cols), line);
        for (std::size_t c = 0; c < cols; ++c) {
            const auto v = detail::to_uint(t[c], line);
            detail::expect(v < f.q(), "entry " + t[c] + " is not a field element", line);
            out(r, c) = static_cast<gf::Scalar>(v);
        }
    }
    detail::expect(!detail::next_tokens(in, t, line), "trailing data after matrix", line);
    return out;
}

// ---- graphs -----------------------------------------------------------------

inline void write_graph(std::ostream& out, const expander::Graph& g) {
    out << "graph " << g.num_vertices() << ' ' << g.num_edges() << '\n';
    for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

inline expander::Graph read_graph(std::istream& in) {
    std::vector<std::string> t;
    std::size_t line = 0;
    detail::expect(detail::next_tokens(in, t, line), "empty graph file", line);
    detail::expect(t.size() == 3 && t[0] == "graph", "expected 'graph <n> <m>'", line);
    const auto n = static_cast<std::uint32_t>(detail::to_uint(t[1], line));
    const auto m = detail::to_uint(t[2], line);
    std::vector<std::pair<expander::Vertex, expander::Vertex>> edges;
    for (std::uint64_t i = 0; i < m; ++i) {
        detail::expect(detail::next_tokens(in, t, line), "missing edge line", line);
        detail::expect(t.size() == 2, "expected 'u v'", line);
        edges.emplace_back(static_cast<expander::Vertex>(detail::to_uint(t[0], line)),
                           static_cast<expander::Vertex>(detail::to_uint(t[1], line)));
    }
    detail::expect(!detail::next_tokens(in, t, line), "trailing data after edges", line);
    return expander::Graph::from_edges(n, edges);
}

inline void write_hypergraph(std::ostream& out, const Hypergraph& h) {
    out << "hypergraph " << h.num_vertices() << ' ' << h.num_edges() << '\n';
    for (const auto& e : h.edges()) {
        for (std::size_t i = 0; i < e.size(); ++i) out << (i ? " " : "") << e[i];
        out << '\n';
    }
}

inline Hypergraph read_hypergraph(std::istream& in) {
    std::vector<std::string> t;
    std::size_t line = 0;
    detail::expect(detail::next_tokens(in, t, line), "empty hypergraph file", line);
    detail::expect(t.size() == 3 && t[0] == "hypergraph", "expected 'hypergraph <n> <m>'", line);
    const auto n = static_cast<std::uint32_t>(detail::to_uint(t[1], line));
    const auto m = detail::to_uint(t[2], line);
    std::vector<Edge> edges;
    for (std::uint64_t i = 0; i < m; ++i) {
        detail::expect(detail::next_tokens(in, t, line), "missing edge line", line);
        Edge e;
        for (const auto& x : t) e.push_back(static_cast<std::uint32_t>(detail::to_uint(x, line)));
        edges.push_back(std::move(e));
    }
    detail::expect(!detail::next_tokens(in, t, line), "trailing data after edges", line);
    return Hypergraph(n, std::move(edges));
}

// ---- supplies and blocking sets ----------------------------------------------

inline void write_blocking_set(std::ostream& out, const construct::BlockingSet& b) { write_matrix(out, b.as_rows()); }

inline construct::BlockingSet read_blocking_set(std::istream& in) {
    MatrixGF m = read_matrix(in);
    std::vector<linalg::Vector> pts;
    for (std::size_t r = 0; r < m.rows(); ++r) pts.push_back(m.row_vector(r));
    return construct::BlockingSet(m.field(), static_cast<std::uint32_t>(m.cols()), std::move(pts));
}

// ---- JSON ---------------------------------------------------------------------

inline json to_json(const Field& f) {
    return json{{"p", f.p()}, {"m", f.m()}, {"q", f.q()}, {"modulus", f.modulus()}};
}

inline json to_json(const MatrixGF& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row_vector(r));
    return rows;
}

inline json to_json(const supply::GeneralPositionReport& r) {
    return json{{"s_independence", r.s_independence},
                {"span_threshold", r.span_threshold},
                {"method", supply::to_string(r.method)},
                {"requested_s", r.requested_s},
                {"requested_t", r.requested_t},
                {"meets_request", r.meets_request}};
}

inline supply::GeneralPositionReport general_position_from_json(const json& j) {
    supply::GeneralPositionReport r;
    r.s_independence = j.at("s_independence").get<std::uint32_t>();
    r.span_threshold = j.at("span_threshold").get<std::uint32_t>();
    r.method = j.at("method").get<std::string>() == "exhaustive" ? supply::CheckMethod::exhaustive
                                                                : supply::CheckMethod::sampled;
    r.requested_s = j.at("requested_s").get<std::uint32_t>();
    r.requested_t = j.at("requested_t").get<std::uint32_t>();
    r.meets_request = j.at("meets_request").get<bool>();
    return r;
}

inline json supply_sidecar(const supply::PointSupply& w) {
    json j{{"kind", "supply"}, {"provenance", supply::to_string(w.provenance())}, {"k", w.k()}, {"n", w.n()}};
    if (w.report()) j["report"] = to_json(*w.report());
    return j;
}

/// Writes <path> (columns are points) and <path>.json.
inline void save_supply(const std::string& path, const supply::PointSupply& w) {
    std::ofstream m(path), s(path + ".json");
    if (!m || !s) throw std::runtime_error("cannot write " + path);
    write_matrix(m, w.points());
    s << supply_sidecar(w).dump(2) << '\n';
}

/// Reads a supply matrix; the sidecar, when present, restores provenance and report.
inline supply::PointSupply load_supply(const std::string& path) {
    std::ifstream m(path);
    if (!m) throw std::runtime_error("cannot read " + path);
    MatrixGF w = read_matrix(m);
    std::ifstream s(path + ".json");
    if (!s) return supply::PointSupply(std::move(w), supply::Provenance::file);
    json j = json::parse(s);
    supply::PointSupply out(std::move(w), supply::provenance_from_string(j.at("provenance").get<std::string>()));
    if (j.contains("report")) out.set_report(general_position_from_json(j["report"]));
    return out;
}

inline json to_json(const construct::BlockingSet& b) {
    json params = json::object();
    for (const auto& [k, v] : b.parameters()) params[k] = v;
    return json{{"kind", "blocking-set"},
                {"recipe", b.recipe()},
                {"parameters", params},
                {"field", to_json(b.field())},
                {"k", b.k()},
                {"size", b.size()}};
}

inline json to_json(const verify::VerificationReport& r, bool include_wall_time = false) {
    json j{{"mode", verify::to_string(r.mode)},
           {"s", r.s},
           {"k", r.k},
           {"q", r.q},
           {"points", r.num_points},
           {"subspaces_checked", r.subspaces_checked},
           {"subspaces_total", r.subspaces_total},
           {"result", r.passed ? "pass" : "fail"}};
    if (r.counterexample) {
        const auto& c = *r.counterexample;
        j["counterexample"] = json{{"index", c.index},
                                   {"quotient", to_json(c.quotient)},
                                   {"basis", to_json(c.subspace.basis())},
                                   {"achieved_rank", c.achieved_rank},
                                   {"required_rank", r.k - r.s}};
    }
    if (r.failures) j["failures"] = *r.failures;
    if (include_wall_time) j["wall_time"] = r.wall_time;
    return j;
}

inline json to_json(const verify::AffineReport& r) {
    json j{{"codim", r.codim},
           {"linear_parts_checked", r.linear_parts_checked},
           {"affine_subspaces_checked", r.affine_subspaces_checked},
           {"result", r.passed ? "pass" : "fail"}};
    if (r.counterexample) j["counterexample"] = json{{"quotient", to_json(r.counterexample->first)}, {"value", r.counterexample->second}};
    return j;
}

inline json to_json(const verify::MinimumSearchResult& r) {
    return json{{"size", r.size}, {"exact", r.exact}, {"nodes", r.nodes}, {"points", r.set.points()}};
}

inline json to_json(const mincode::MinimalityReport& r) {
    json j{{"s", r.s}, {"subspaces_examined", r.subspaces_examined}, {"result", r.passed ? "pass" : "fail"}};
    if (r.violating_pair) {
        const auto& v = *r.violating_pair;
        j["violating_pair"] = json{{"x", to_json(v.x)}, {"y", to_json(v.y)}, {"support_x", v.support_x}, {"support_y", v.support_y}};
    }
    return j;
}

inline json to_json(const expander::SpectralReport& r) {
    return json{{"n", r.n},
                {"d", r.d},
                {"lambda_bound", r.lambda_bound},
                {"method", expander::to_string(r.method)},
                {"bipartite", r.bipartite},
                {"tolerance", r.tolerance},
                {"residual", r.residual},
                {"iterations", r.iterations},
                {"converged", r.converged}};
}

inline json to_json(const expander::MixingReport& r) {
    return json{{"trials", r.trials},
                {"single_violations", r.single_violations},
                {"pair_violations", r.pair_violations},
                {"max_ratio_single", r.max_ratio_single},
                {"max_ratio_pair", r.max_ratio_pair},
                {"result", r.passed() ? "pass" : "fail"}};
}

inline json to_json(const lincomb::EdgeWitness& w) {
    return json{{"edge", w.edge}, {"coefficients", w.coefficients}, {"target", w.target}};
}

inline json to_json(const lincomb::Certificate& c) {
    json rows = json::array();
    for (const auto& w : c.rows) rows.push_back(to_json(w));
    return json{{"s", c.s}, {"order", c.order}, {"edges", rows}, {"achieved_dim", c.achieved_dim}, {"rank_n", c.rank_n}};
}

/// 64-bit FNV-1a of a byte string, as 16 hex digits.
inline std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << h;
    return out.str();
}

}  // namespace blockforge::io
