#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "berge/berge.hpp"
#include "berge/bounds.hpp"
#include "berge/constructions.hpp"
#include "berge/core.hpp"
#include "berge/error.hpp"
#include "berge/search.hpp"
#include "berge/symmetrization.hpp"

namespace berge::cli {

using nlohmann::json;

namespace detail {

inline void emit(std::ostream& out, const json& j) { out << j.dump() << '\n'; }

template <class T, class Reader>
T load(const std::string& path, Reader read, const char* what) {
    std::ifstream in(path);
    if (!in) throw DomainError(std::string("cannot open ") + what + " file '" + path + "'");
    return read(in);
}

inline json certificate_json(const Graph& f, const BergeCertificate& c) {
    json core = json::array();
    for (std::size_t v = 0; v < c.core_map.size(); ++v) core.push_back({v, c.core_map[v]});
    json edges = json::array();
    for (std::size_t i = 0; i < c.edge_map.size(); ++i) {
        auto [u, v] = f.edges()[i];
        edges.push_back({json::array({u, v}), c.edge_map[i]});
    }
    return {{"coreMap", core}, {"edgeMap", edges}};
}

inline int default_jobs() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

/// Every key of `expected` is present in `actual` with an equal value (objects recursively).
inline bool subset_match(const json& expected, const json& actual) {
    if (expected.is_object()) {
        if (!actual.is_object()) return false;
        for (const auto& [key, value] : expected.items()) {
            if (!actual.contains(key) || !subset_match(value, actual[key])) return false;
        }
        return true;
    }
    return expected == actual;
}

inline Rational rational_arg(const std::string& text) { return berge::detail::parse_rational(text); }

inline int int_arg(const std::string& name, const std::string& text) {
    const Rational x = rational_arg(text);
    if (boost::multiprecision::denominator(x) != 1 || x < -1'000'000 || x > 1'000'000) {
        throw DomainError("--" + name + " must be an integer");
    }
    return static_cast<int>(boost::multiprecision::numerator(x));
}

} // namespace detail

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Runs every manifest entry in-process and compares the last output line (and the
/// exit code, default 0) with the expectation. Returns the number of failures.
inline int verify_corpus(const std::string& dir, std::ostream& out, std::ostream& err) {
    namespace fs = std::filesystem;
    const fs::path manifest_path = fs::path(dir) / "manifest.json";
    std::ifstream in(manifest_path);
    if (!in) throw DomainError("verify-corpus: missing manifest '" + manifest_path.string() + "'");
    json manifest;
    try {
        manifest = json::parse(in);
    } catch (const json::exception& e) {
        throw DomainError(std::string("verify-corpus: malformed manifest: ") + e.what());
    }
    if (!manifest.is_array()) throw DomainError("verify-corpus: manifest must be a JSON array");
    int failed = 0;
    for (std::size_t i = 0; i < manifest.size(); ++i) {
        const json& entry = manifest[i];
        if (!entry.is_object() || !entry.contains("command") || !entry.contains("expected")) {
            throw DomainError("verify-corpus: entry " + std::to_string(i) + " needs command and expected");
        }
        std::vector<std::string> argv{entry["command"].get<std::string>()};
        for (const auto& a : entry.value("args", json::array())) {
            std::string s = a.get<std::string>();
            if (s.rfind("--", 0) != 0 && fs::is_regular_file(fs::path(dir) / s)) s = (fs::path(dir) / s).string();
            argv.push_back(s);
        }
        std::ostringstream sub_out, sub_err;
        const int code = run(argv, sub_out, sub_err);
        json last;
        std::istringstream lines(sub_out.str());
        for (std::string line; std::getline(lines, line);) {
            if (!line.empty()) last = json::parse(line, nullptr, false);
        }
        const int want_code = entry.value("exit", 0);
        const bool pass = code == want_code && detail::subset_match(entry["expected"], last);
        json report{{"entry", i}, {"command", argv[0]}, {"pass", pass}};
        if (!pass) {
            report["exit"] = code;
            report["got"] = last;
            report["expected"] = entry["expected"];
            if (!sub_err.str().empty()) report["stderr"] = sub_err.str();
            ++failed;
        }
        detail::emit(out, report);
    }
    detail::emit(out, {{"command", "verify-corpus"},
                       {"entries", manifest.size()},
                       {"passed", manifest.size() - static_cast<std::size_t>(failed)},
                       {"failed", failed}});
    (void)err;
    return failed;
}

/// Command-line entry point. JSON lines on `out`, diagnostics on `err`.
/// Exit codes: 0 success, 1 domain error, 2 budget exhausted.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact computations for Berge-Turan problems", "berge"};
    app.require_subcommand(1);

    int jobs = detail::default_jobs();
    std::uint64_t budget = 0;

    // check-berge
    auto* check = app.add_subcommand("check-berge", "Test a hypergraph for a Berge copy of a pattern");
    std::string hyper_path, pattern;
    std::uint64_t check_budget = 200'000'000;
    check->add_option("--hypergraph", hyper_path, "hypergraph file")->required();
    check->add_option("--pattern", pattern, "pattern name or graph file")->required();
    check->add_option("--budget", check_budget, "node budget");

    // decompose
    auto* decompose = app.add_subcommand("decompose", "Red-blue decomposition of a hypergraph");
    std::vector<std::string> decompose_patterns;
    decompose->add_option("--hypergraph", hyper_path, "hypergraph file")->required();
    decompose->add_option("--pattern", decompose_patterns, "patterns whose freeness is checked (repeatable)");

    // search
    auto* search = app.add_subcommand("search", "ex_r(n, Berge-F) by exhaustive search");
    int n = 0, r = 3, k = 0, n_max = 0;
    std::string prune_spec;
    bool no_guards = false;
    search->add_option("--n", n)->required();
    search->add_option("--r", r)->required();
    search->add_option("--pattern", pattern)->required();
    search->add_option("--budget", budget, "node budget");
    search->add_option("--jobs", jobs);
    search->add_option("--prune-bound", prune_spec, "bound spec JSON used as an upper-bound cut");
    search->add_flag("--no-guards", no_guards, "lift the size guards");

    // g-r-search
    auto* grs = app.add_subcommand("g-r-search", "max g_r over K_k-free red-blue graphs");
    grs->add_option("--n", n)->required();
    grs->add_option("--k", k)->required();
    grs->add_option("--r", r)->required();
    grs->add_option("--budget", budget);
    grs->add_option("--jobs", jobs);
    grs->add_flag("--no-guards", no_guards);

    // bound
    auto* bound = app.add_subcommand("bound", "Evaluate a closed-form bound exactly");
    std::string theorem, spec_json;
    std::map<std::string, std::string> params;
    std::vector<std::string> ex_inputs;
    bound->add_option("--theorem", theorem);
    for (const char* p : {"n", "k", "r", "t", "delta", "c"}) bound->add_option(std::string("--") + p, params[p]);
    bound->add_option("--ex", ex_inputs, "exInput: a number or oracle:PATTERN (repeatable, in slot order)");
    bound->add_option("--spec", spec_json, "full bound spec as JSON");

    // construct
    auto* construct = app.add_subcommand("construct", "Build a construction");
    std::string kind, output;
    std::string c_n, c_parts, c_k, c_r;
    construct->add_option("--kind", kind, "turan-graph | turan-hypergraph | partition | near-regular | expansion | pattern")
        ->required();
    construct->add_option("--n", c_n);
    construct->add_option("--parts", c_parts);
    construct->add_option("--k", c_k);
    construct->add_option("--r", c_r);
    construct->add_option("--pattern", pattern);
    construct->add_option("--output", output, "also write the text format to this file");

    // symmetrize
    auto* symm = app.add_subcommand("symmetrize", "Zykov symmetrization trace");
    std::string graph_path, turan_spec, color = "blue";
    symm->add_option("--graph", graph_path, "red-blue graph file");
    symm->add_option("--turan", turan_spec, "start from T_2(N, PARTS) given as N,PARTS");
    symm->add_option("--color", color, "colour of the --turan start graph")->check(CLI::IsMember({"red", "blue"}));
    symm->add_option("--k", k)->required();
    symm->add_option("--r", r)->required();

    // threshold
    auto* thr = app.add_subcommand("threshold", "Empirical n0(k, r)");
    thr->add_option("--k", k)->required();
    thr->add_option("--r", r)->required();
    thr->add_option("--n-max", n_max)->required();
    thr->add_option("--budget", budget);
    thr->add_option("--jobs", jobs);

    // verify-corpus
    auto* corpus = app.add_subcommand("verify-corpus", "Run the regression corpus");
    std::string corpus_dir;
    corpus->add_option("--dir", corpus_dir)->required();

    if (!args.empty() && args[0].rfind("-", 0) != 0) {
        const auto subs = app.get_subcommands([](const CLI::App*) { return true; });
        if (std::none_of(subs.begin(), subs.end(), [&](const CLI::App* s) { return s->get_name() == args[0]; })) {
            err << "error: unknown subcommand '" << args[0] << "'\n";
            return 1;
        }
    }
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }

    auto search_config = [&] {
        SearchConfig cfg;
        if (budget > 0) cfg.node_budget = budget;
        cfg.jobs = std::max(1, jobs);
        cfg.enforce_guards = !no_guards;
        return cfg;
    };

    try {
        if (check->parsed()) {
            const auto h = detail::load<Hypergraph>(hyper_path, [](std::istream& in) { return read_hypergraph(in); },
                                                    "hypergraph");
            const Graph f = parse_pattern(pattern);
            BergeSearchOptions opts;
            opts.node_budget = check_budget;
            const auto res = find_berge(h, f, opts);
            json j{{"command", "check-berge"}, {"pattern", pattern}, {"nodes", res.nodes}};
            if (res.status == SearchStatus::budget_exhausted) {
                j["status"] = "budget_exhausted";
                detail::emit(out, j);
                err << "check-berge: node budget exhausted\n";
                return 2;
            }
            j["contains"] = res.status == SearchStatus::found;
            if (res.certificate) j["certificate"] = detail::certificate_json(f, *res.certificate);
            detail::emit(out, j);
            return 0;
        }
        if (decompose->parsed()) {
            const auto h = detail::load<Hypergraph>(hyper_path, [](std::istream& in) { return read_hypergraph(in); },
                                                    "hypergraph");
            const auto d = decompose_red_blue(h);
            json j{{"command", "decompose"},
                   {"hyperedges", h.size()},
                   {"bound", d.bound},
                   {"saturated", d.saturated},
                   {"redEdges", d.shadow.red_count()},
                   {"blueEdges", d.shadow.graph().size() - d.shadow.red_count()},
                   {"shadow", to_text(d.shadow)},
                   {"origins", d.origin}};
            json checks = json::array();
            for (const auto& p : decompose_patterns) {
                const Graph f = parse_pattern(p);
                const bool berge = contains_berge(h, f).has_value();
                checks.push_back({{"pattern", p},
                                  {"hypergraphContainsBerge", berge},
                                  {"shadowContains", contains_subgraph(d.shadow.graph(), f)}});
            }
            j["patterns"] = checks;
            detail::emit(out, j);
            return 0;
        }
        if (search->parsed()) {
            auto cfg = search_config();
            if (!prune_spec.empty()) {
                try {
                    cfg.prune_with_bound = bound_spec_from_json(json::parse(prune_spec));
                } catch (const json::exception& e) {
                    throw DomainError(std::string("--prune-bound: malformed JSON: ") + e.what());
                }
            }
            const auto res = max_berge_free(n, r, parse_pattern(pattern), cfg);
            json j{{"command", "search"}, {"n", n},          {"r", r},           {"pattern", pattern},
                   {"optimum", res.optimum}, {"exact", res.exact}, {"nodes", res.nodes}};
            if (res.witness) j["witness"] = to_text(*res.witness);
            detail::emit(out, j);
            return res.exact ? 0 : 2;
        }
        if (grs->parsed()) {
            const auto res = max_g_r(n, k, r, search_config());
            json j{{"command", "g-r-search"}, {"n", n},          {"k", k},           {"r", r},
                   {"optimum", res.optimum},  {"exact", res.exact}, {"nodes", res.nodes}};
            if (res.red_blue_witness) j["witness"] = to_text(*res.red_blue_witness);
            detail::emit(out, j);
            return res.exact ? 0 : 2;
        }
        if (bound->parsed()) {
            BoundSpec spec;
            if (!spec_json.empty()) {
                try {
                    spec = bound_spec_from_json(json::parse(spec_json));
                } catch (const json::exception& e) {
                    throw DomainError(std::string("--spec: malformed JSON: ") + e.what());
                }
            } else {
                if (theorem.empty()) throw DomainError("bound: --theorem or --spec is required");
                spec.theorem = parse_theorem(theorem);
                for (const auto& [name, value] : params) {
                    if (!value.empty()) spec.params[name] = detail::rational_arg(value);
                }
                for (const auto& x : ex_inputs) {
                    ExInput in;
                    if (x.rfind("oracle:", 0) == 0) {
                        in.oracle_name = x.substr(7);
                        in.oracle = parse_pattern(in.oracle_name);
                    } else {
                        in.value = detail::rational_arg(x);
                    }
                    spec.ex_inputs.push_back(std::move(in));
                }
            }
            json j = to_json(evaluate(spec));
            j["command"] = "bound";
            j["theorem"] = to_string(spec.theorem);
            detail::emit(out, j);
            return 0;
        }
        if (construct->parsed()) {
            auto need = [&](const std::string& name, const std::string& value) {
                if (value.empty()) throw DomainError("construct " + kind + ": --" + name + " is required");
                return detail::int_arg(name, value);
            };
            json j{{"command", "construct"}, {"kind", kind}};
            std::string text;
            if (kind == "turan-graph" || kind == "pattern") {
                const Graph g = kind == "pattern" ? parse_pattern(pattern) : turan_graph(need("n", c_n), need("parts", c_parts));
                j["vertices"] = g.order();
                j["edges"] = g.size();
                text = to_text(g);
            } else {
                Hypergraph h;
                if (kind == "turan-hypergraph") {
                    h = turan_hypergraph(need("n", c_n), need("parts", c_parts), need("r", c_r));
                } else if (kind == "partition") {
                    h = partition_construction(need("n", c_n), need("k", c_k), need("r", c_r));
                } else if (kind == "near-regular") {
                    h = near_regular_construction(need("n", c_n), need("k", c_k), need("r", c_r));
                } else if (kind == "expansion") {
                    if (pattern.empty()) throw DomainError("construct expansion: --pattern is required");
                    h = expansion(parse_pattern(pattern), need("r", c_r));
                } else {
                    throw DomainError("construct: unknown kind '" + kind + "'");
                }
                j["vertices"] = h.order();
                j["uniformity"] = h.uniformity();
                j["edges"] = h.size();
                text = to_text(h);
            }
            j["text"] = text;
            if (!output.empty()) {
                std::ofstream file(output);
                if (!file) throw DomainError("construct: cannot write '" + output + "'");
                file << text;
            }
            detail::emit(out, j);
            return 0;
        }
        if (symm->parsed()) {
            RedBlueGraph g0;
            if (!graph_path.empty() == !turan_spec.empty()) {
                throw DomainError("symmetrize: give exactly one of --graph and --turan");
            }
            if (!graph_path.empty()) {
                g0 = detail::load<RedBlueGraph>(graph_path, [](std::istream& in) { return read_red_blue(in); },
                                                "red-blue graph");
            } else {
                const auto comma = turan_spec.find(',');
                if (comma == std::string::npos) throw DomainError("symmetrize: --turan expects N,PARTS");
                g0 = RedBlueGraph::monochromatic(turan_graph(detail::int_arg("turan", turan_spec.substr(0, comma)),
                                                             detail::int_arg("turan", turan_spec.substr(comma + 1))),
                                                 color == "red" ? Color::red : Color::blue);
            }
            const auto trace = zykov_run(g0, k, r);
            for (std::size_t i = 0; i < trace.steps.size(); ++i) {
                const auto& s = trace.steps[i];
                detail::emit(out, {{"step", i},
                                   {"kind", to_string(s.kind)},
                                   {"move", s.move},
                                   {"operands", s.operands},
                                   {"gBefore", s.g_before},
                                   {"gAfter", s.g_after},
                                   {"edgesBefore", s.edges_before},
                                   {"edgesAfter", s.edges_after},
                                   {"redBefore", s.red_before},
                                   {"redAfter", s.red_after}});
            }
            const auto rep = check_endpoint(trace.final_graph);
            detail::emit(out, {{"command", "symmetrize"},
                               {"steps", trace.steps.size()},
                               {"g", g_r(trace.final_graph, r)},
                               {"edges", trace.final_graph.graph().size()},
                               {"redEdges", trace.final_graph.red_count()},
                               {"completeMultipartite", rep.complete_multipartite},
                               {"classPairsMonochromatic", rep.class_pairs_monochromatic},
                               {"redEquivalence", rep.red_equivalence},
                               {"monochromatic", rep.monochromatic},
                               {"final", to_text(trace.final_graph)}});
            return 0;
        }
        if (thr->parsed()) {
            const auto report = threshold_n0(k, r, n_max, search_config());
            for (const auto& row : report.rows) {
                detail::emit(out, {{"n", row.n},
                                   {"turan", row.turan},
                                   {"optimum", row.optimum},
                                   {"turanOptimal", row.turan_optimal},
                                   {"exact", row.exact}});
            }
            json j{{"command", "threshold"}, {"k", k}, {"r", r}, {"nMax", n_max}, {"verifiedUpTo", n_max},
                   {"exact", report.exact}};
            j["n0"] = report.empirical_n0 ? json(*report.empirical_n0) : json(nullptr);
            detail::emit(out, j);
            return report.exact ? 0 : 2;
        }
        if (corpus->parsed()) {
            return verify_corpus(corpus_dir, out, err) == 0 ? 0 : 1;
        }
    } catch (const BudgetExhausted& e) {
        err << "budget exhausted: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    err << "error: no subcommand\n";
    return 1;
}

} // namespace berge::cli
