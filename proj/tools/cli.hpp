#pragma once

// blockforge command line. Data (matrices, graphs) goes to stdout or --out; the
// JSON report goes to stdout when the data went to a file or there is no data,
// otherwise to stderr, unless --report names a file.
//
// Exit codes: 0 success, 1 a check failed, 2 bad arguments or exhausted budget.

#include <CLI11.hpp>

#include <blockforge/blockforge.hpp>
#include <blockforge/io.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace blockforge::cli {

using io::json;

inline constexpr const char* kVersion = "0.1.0";

struct RunConfig {
    std::uint64_t seed = 0;
    unsigned jobs = 1;
    std::string format = "json";
    Budgets budgets = Budgets::from_environment();
    std::string out;     // data destination, empty = stdout
    std::string report;  // report destination, empty = routed
    bool timing = false;
};

namespace detail {

/// Whole input from a path or stdin ("-"), remembered for provenance hashing.
class Inputs {
public:
    std::string read(const std::string& path, std::istream& stdin_stream) {
        std::string bytes;
        if (path == "-" || path.empty()) {
            bytes.assign(std::istreambuf_iterator<char>(stdin_stream), {});
        } else {
            std::ifstream f(path, std::ios::binary);
            if (!f) throw std::invalid_argument("cannot read " + path);
            bytes.assign(std::istreambuf_iterator<char>(f), {});
        }
        hashes_[path.empty() ? "-" : path] = io::fnv1a_hex(bytes);
        return bytes;
    }
    const json& hashes() const { return hashes_; }

private:
    json hashes_ = json::object();
};

inline gf::Field parse_field(const std::string& spec) {
    auto comma = spec.find(',');
    try {
        const auto p = static_cast<std::uint32_t>(std::stoul(spec.substr(0, comma)));
        const auto m = comma == std::string::npos ? 1u : static_cast<std::uint32_t>(std::stoul(spec.substr(comma + 1)));
        return gf::Field::create(p, m);
    } catch (const std::invalid_argument& e) {
        if (std::string(e.what()).rfind("field:", 0) == 0) throw;
        throw std::invalid_argument("--field expects p or p,m (got '" + spec + "')");
    }
}

/// Flattened "key: value" rendering of a JSON object.
inline void render_text(std::ostream& out, const json& j, const std::string& prefix = "") {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            render_text(out, it.value(), prefix.empty() ? it.key() : prefix + "." + it.key());
    } else {
        out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
    }
}

}  // namespace detail

/// Runs one invocation; `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"blockforge: strong blocking sets, minimal codes and the tools around them", "blockforge"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    app.add_option("--jobs", cfg.jobs, "worker threads for sharded work")->check(CLI::Range(1u, 1024u));
    app.add_option("--format", cfg.format, "report format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--budget-subspaces", cfg.budgets.subspaces, "subspace enumeration cap")->check(CLI::PositiveNumber);
    app.add_option("--budget-points", cfg.budgets.points, "projective point cap")->check(CLI::PositiveNumber);
    app.add_option("--budget-cliques", cfg.budgets.cliques, "hyperedge cap")->check(CLI::PositiveNumber);
    app.add_option("--out", cfg.out, "data output file (default stdout)");
    app.add_option("--report", cfg.report, "report output file");
    app.add_flag("--timing", cfg.timing, "include wall time in reports (breaks byte-identical output)");

    // supply
    auto* sup = app.add_subcommand("supply", "build and certify a point supply");
    std::string field_spec = "2";
    std::uint32_t sup_k = 0, sup_n = 0, sup_s = 1, sup_t = 0, max_tries = 100;
    std::string sup_mode = "mds";
    sup->add_option("--field", field_spec, "p or p,m")->required();
    sup->add_option("--k", sup_k)->required();
    sup->add_option("--n", sup_n)->required();
    sup->add_option("--mode", sup_mode)->check(CLI::IsMember({"mds", "random"}));
    sup->add_option("--s", sup_s, "required independence (random mode)");
    sup->add_option("--t", sup_t, "required span threshold (random mode, default n)");
    sup->add_option("--max-tries", max_tries);

    // graph
    auto* gr = app.add_subcommand("graph", "produce a graph file");
    std::string graph_kind;
    std::uint32_t lps_p = 5, lps_q = 29, gr_n = 0, gr_u = 2, gr_d = 2;
    std::string gr_in = "-";
    gr->add_option("kind", graph_kind)->required()->check(CLI::IsMember({"lps", "complete", "from-file", "power", "blowup"}));
    gr->add_option("--p", lps_p);
    gr->add_option("--q", lps_q);
    gr->add_option("--n", gr_n);
    gr->add_option("--u", gr_u, "power exponent");
    gr->add_option("--d", gr_d, "blow-up clique size");
    gr->add_option("--in", gr_in, "input graph file (default stdin)");

    // construct
    auto* con = app.add_subcommand("construct", "build a blocking set from a graph and a supply");
    std::string recipe, con_graph, con_supply, reading = "center";
    std::uint32_t con_s = 2;
    con->add_option("--recipe", recipe)->required()->check(CLI::IsMember({"cherry", "ballpower", "neighborhood"}));
    con->add_option("--graph", con_graph)->required();
    con->add_option("--supply", con_supply)->required();
    con->add_option("--s", con_s);
    con->add_option("--reading", reading)->check(CLI::IsMember({"center", "pairwise"}));

    // verify
    auto* ver = app.add_subcommand("verify", "check the strong s-blocking property");
    std::string ver_set = "-";
    std::uint32_t ver_s = 1;
    std::uint64_t sampled = 0;
    bool count_failures = false;
    ver->add_option("--set", ver_set, "blocking set file (default stdin)");
    ver->add_option("--s", ver_s)->required();
    ver->add_option("--sampled", sampled, "random subspaces instead of exhaustive enumeration");
    ver->add_flag("--count-failures", count_failures, "scan every subspace and count failures");

    // mincheck
    auto* mc = app.add_subcommand("mincheck", "check s-minimality of a code");
    std::string mc_code = "-";
    std::uint32_t mc_s = 1;
    mc->add_option("--code", mc_code, "generator matrix file (default stdin)");
    mc->add_option("--s", mc_s)->required();

    // convert
    auto* cv = app.add_subcommand("convert", "blocking set to code generator or affine blocking set");
    std::string cv_kind = "code", cv_set = "-";
    std::optional<std::uint32_t> cv_verify;
    cv->add_option("kind", cv_kind)->check(CLI::IsMember({"code", "affine"}));
    cv->add_option("--set", cv_set, "blocking set file (default stdin)");
    cv->add_option("--verify-s", cv_verify, "affine: check all codimension-(s+1) affine subspaces");

    // spectra
    auto* sp = app.add_subcommand("spectra", "second eigenvalue and mixing check");
    std::string sp_graph = "-";
    double tol = 1e-6;
    std::uint32_t dense_limit = 2000;
    std::uint64_t mixing = 0;
    std::optional<double> lambda;
    sp->add_option("--graph", sp_graph, "graph file (default stdin)");
    sp->add_option("--tol", tol);
    sp->add_option("--dense-limit", dense_limit);
    sp->add_option("--mixing", mixing, "sampled mixing-lemma trials");
    sp->add_option("--lambda", lambda, "lambda for the mixing check (default: computed bound)");

    // oracle
    auto* orc = app.add_subcommand("oracle", "exact minimum strong s-blocking set (small spaces)");
    std::string orc_field = "2";
    std::uint32_t orc_k = 3, orc_s = 1;
    std::uint64_t node_budget = 10'000'000;
    orc->add_option("--field", orc_field)->required();
    orc->add_option("--k", orc_k)->required();
    orc->add_option("--s", orc_s)->required();
    orc->add_option("--node-budget", node_budget);

    // bench
    auto* bn = app.add_subcommand("bench", "time the exhaustive verifier");
    std::string bn_set = "-";
    std::uint32_t bn_s = 1, repeat = 3;
    bn->add_option("--set", bn_set)->required();
    bn->add_option("--s", bn_s)->required();
    bn->add_option("--repeat", repeat);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    detail::Inputs inputs;
    std::optional<std::string> data;  // serialized data product
    json result;
    int code = 0;

    // provenance records the arguments without --jobs, which never changes results
    json recorded = json::array();
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--jobs") {
            ++i;
            continue;
        }
        if (args[i].rfind("--jobs=", 0) == 0) continue;
        recorded.push_back(args[i]);
    }

    auto text_of = [](auto&& writer) {
        std::ostringstream ss;
        writer(ss);
        return ss.str();
    };

    try {
        if (*sup) {
            gf::Field f = detail::parse_field(field_spec);
            supply::PointSupply w = sup_mode == "mds"
                                        ? supply::supply_mds(f, sup_k, sup_n)
                                        : supply::supply_random_verified(f, sup_k, sup_n, sup_s, sup_t ? sup_t : sup_n,
                                                                         cfg.seed, max_tries);
            if (!w.report())
                w.set_report(supply::verify_general_position(w, sup_mode == "mds" ? std::min(sup_k, sup_n) - 1 : sup_s,
                                                             sup_t ? sup_t : sup_k));
            if (!cfg.out.empty()) {
                io::save_supply(cfg.out, w);
            } else {
                data = text_of([&](std::ostream& s) { io::write_matrix(s, w.points()); });
            }
            result = io::supply_sidecar(w);
            result["field"] = io::to_json(f);
        } else if (*gr) {
            expander::Graph g;
            if (graph_kind == "lps") {
                g = expander::lps_graph(lps_p, lps_q);
            } else if (graph_kind == "complete") {
                if (gr_n < 1) throw std::invalid_argument("graph complete: --n must be >= 1");
                g = expander::complete_graph(gr_n);
            } else {
                std::istringstream src(inputs.read(gr_in, in));
                g = io::read_graph(src);
                if (graph_kind == "power") g = expander::power_graph(g, static_cast<int>(gr_u));
                if (graph_kind == "blowup") g = expander::blowup(g, gr_d);
            }
            data = text_of([&](std::ostream& s) { io::write_graph(s, g); });
            auto deg = g.regular_degree();
            result = json{{"kind", graph_kind},
                          {"n", g.num_vertices()},
                          {"m", g.num_edges()},
                          {"regular_degree", deg ? json(*deg) : json(nullptr)},
                          {"connected", expander::is_connected(g)},
                          {"bipartite", expander::bipartition(g).has_value()}};
        } else if (*con) {
            std::istringstream gsrc(inputs.read(con_graph, in));
            expander::Graph g = io::read_graph(gsrc);
            inputs.read(con_supply, in);
            supply::PointSupply w = io::load_supply(con_supply);
            std::optional<construct::BlockingSet> b;
            if (recipe == "cherry") {
                if (con_s != 2) throw std::invalid_argument("construct cherry: the cherry recipe is for s = 2");
                b = construct::construct_cherry(g, w, cfg.budgets, cfg.jobs);
            } else if (recipe == "ballpower") {
                b = construct::construct_ball_power(g, w, con_s,
                                                    reading == "center" ? construct::BallReading::center
                                                                        : construct::BallReading::pairwise,
                                                    cfg.budgets, cfg.jobs);
            } else {
                b = construct::construct_neighborhood(g, w, con_s, cfg.budgets, cfg.jobs);
            }
            result = io::to_json(*b);
            if (con_s < w.k()) result["lower_bound"] = construct::lower_bound(w.field().q(), w.k(), con_s);
            if (!cfg.out.empty()) {
                std::ofstream f(cfg.out), side(cfg.out + ".json");
                if (!f || !side) throw std::invalid_argument("cannot write " + cfg.out);
                io::write_blocking_set(f, *b);
                side << result.dump(2) << '\n';
            } else {
                data = text_of([&](std::ostream& s) { io::write_blocking_set(s, *b); });
            }
        } else if (*ver) {
            std::istringstream src(inputs.read(ver_set, in));
            construct::BlockingSet b = io::read_blocking_set(src);
            verify::VerificationReport rep;
            if (sampled > 0) {
                rep = verify::is_strong_blocking_sampled(b, ver_s, sampled, cfg.seed);
            } else {
                verify::VerifyOptions opt;
                opt.jobs = cfg.jobs;
                opt.budget = cfg.budgets.subspaces;
                opt.count_failures = count_failures;
                rep = verify::is_strong_blocking(b, ver_s, opt);
            }
            result = io::to_json(rep, cfg.timing);
            if (!rep.passed) code = 1;
        } else if (*mc) {
            std::istringstream src(inputs.read(mc_code, in));
            mincode::LinearCode c(io::read_matrix(src));
            auto rep = mincode::is_s_minimal(c, mc_s, cfg.budgets.subspaces);
            result = io::to_json(rep);
            if (!rep.passed) code = 1;
        } else if (*cv) {
            std::istringstream src(inputs.read(cv_set, in));
            construct::BlockingSet b = io::read_blocking_set(src);
            if (cv_kind == "code") {
                mincode::LinearCode c = mincode::blocking_to_code(b);
                data = text_of([&](std::ostream& s) { io::write_matrix(s, c.generator()); });
                result = json{{"kind", "code"}, {"n", c.n()}, {"k", c.k()}};
            } else {
                auto a = verify::to_affine_blocking(b);
                data = text_of([&](std::ostream& s) {
                    io::write_matrix(s, linalg::MatrixGF::from_rows(a.field, a.points, a.k));
                });
                result = json{{"kind", "affine"}, {"k", a.k}, {"size", a.points.size()}, {"source_size", b.size()}};
                if (cv_verify) {
                    auto rep = verify::verify_affine_blocking(a, *cv_verify + 1, cfg.budgets.subspaces);
                    result["verification"] = io::to_json(rep);
                    if (!rep.passed) code = 1;
                }
            }
            if (!cfg.out.empty()) {
                std::ofstream f(cfg.out);
                if (!f) throw std::invalid_argument("cannot write " + cfg.out);
                f << *data;
                data.reset();
            }
        } else if (*sp) {
            std::istringstream src(inputs.read(sp_graph, in));
            expander::Graph g = io::read_graph(src);
            expander::SpectralOptions opt;
            opt.tol = tol;
            opt.dense_limit = dense_limit;
            opt.seed = cfg.seed;
            auto rep = expander::second_eigenvalue(g, opt);
            result = io::to_json(rep);
            if (mixing > 0) {
                auto mix = expander::check_mixing(g, lambda.value_or(rep.lambda_bound), mixing, cfg.seed);
                result["mixing"] = io::to_json(mix);
                if (!mix.passed()) code = 1;
            }
        } else if (*orc) {
            gf::Field f = detail::parse_field(orc_field);
            auto res = verify::minimum_size_search(f, orc_k, orc_s, node_budget);
            result = io::to_json(res);
            result["lower_bound"] = construct::lower_bound(f.q(), orc_k, orc_s);
            data = text_of([&](std::ostream& s) { io::write_blocking_set(s, res.set); });
        } else if (*bn) {
            std::istringstream src(inputs.read(bn_set, in));
            construct::BlockingSet b = io::read_blocking_set(src);
            json runs = json::array();
            for (std::uint32_t r = 0; r < repeat; ++r) {
                verify::VerifyOptions opt;
                opt.jobs = cfg.jobs;
                opt.budget = cfg.budgets.subspaces;
                auto rep = verify::is_strong_blocking(b, bn_s, opt);
                runs.push_back(json{{"result", rep.passed ? "pass" : "fail"},
                                    {"subspaces_checked", rep.subspaces_checked},
                                    {"wall_time", rep.wall_time},
                                    {"subspaces_per_second", rep.wall_time > 0 ? rep.subspaces_checked / rep.wall_time : 0.0}});
            }
            result = json{{"jobs", cfg.jobs}, {"runs", runs}};
        }
    } catch (const BudgetExceeded& e) {
        err << "error: budget '" << e.budget() << "' exceeded (limit " << e.limit() << "): " << e.what()
            << "\n       raise it with --budget-" << e.budget() << " or BLOCKFORGE_BUDGET_" << e.budget() << '\n';
        return 2;
    } catch (const io::ParseError& e) {
        err << "error: malformed input: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }

    json report{{"tool", "blockforge"},
                {"version", kVersion},
                {"command", app.get_subcommands().front()->get_name()},
                {"args", recorded},
                {"seed", cfg.seed},
                {"inputs", inputs.hashes()},
                {"result", result}};
    std::string rendered;
    if (cfg.format == "json") {
        rendered = report.dump(2) + "\n";
    } else {
        std::ostringstream ss;
        detail::render_text(ss, report);
        rendered = ss.str();
    }

    if (data) {
        if (!cfg.out.empty()) {
            std::ofstream f(cfg.out);
            f << *data;
        } else {
            out << *data;
        }
    }
    if (!cfg.report.empty()) {
        std::ofstream f(cfg.report);
        if (!f) {
            err << "error: cannot write " << cfg.report << '\n';
            return 2;
        }
        f << rendered;
    } else if (data && cfg.out.empty()) {
        err << rendered;
    } else {
        out << rendered;
    }
    return code;
}

inline int run(int argc, char** argv, std::istream& in, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, in, out, err);
}

}  // namespace blockforge::cli
