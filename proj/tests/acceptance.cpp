// One PASS/FAIL line per acceptance criterion; exits non-zero on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "berge/berge.hpp"
#include "berge/bounds.hpp"
#include "berge/constructions.hpp"
#include "berge/search.hpp"
#include "berge/symmetrization.hpp"
#include "oracles.hpp"

using namespace berge;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool ok = true;
    std::ostringstream detail;

    void fail(const std::string& what) {
        if (ok) detail << what;
        ok = false;
    }
};

int failures = 0;

void report(int id, const std::string& title, const std::function<void(Outcome&)>& body, double limit = 0) {
    Outcome o;
    const auto t0 = Clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.fail(std::string("exception: ") + e.what());
    }
    const double secs = seconds_since(t0);
    if (limit > 0 && secs >= limit) o.fail("took longer than " + std::to_string(static_cast<int>(limit)) + "s");
    std::printf("%s criterion %d: %s (%.2fs)%s%s\n", o.ok ? "PASS" : "FAIL", id, title.c_str(), secs,
                o.detail.str().empty() ? "" : " -- ", o.detail.str().c_str());
    std::fflush(stdout);
    if (!o.ok) ++failures;
}

std::string str(std::uint64_t x) { return std::to_string(x); }

// 1 -------------------------------------------------------------------------

void exact_values(Outcome& o) {
    struct Case {
        int n;
        std::string f;
        std::uint64_t expected;
    };
    std::vector<Case> cases;
    for (int n = 0; n <= 4; ++n) cases.push_back({n, "K4", binomial(n, 3)});
    cases.push_back({5, "K4", 5});
    cases.push_back({5, "K5", 9});
    cases.push_back({6, "K4", oracle::transversal_count(6, 3, 3)});
    for (const auto& c : cases) {
        const auto t0 = Clock::now();
        const auto res = max_berge_free(c.n, 3, parse_pattern(c.f));
        const double secs = seconds_since(t0);
        if (!res.exact || res.optimum != c.expected || secs >= 60.0) {
            o.fail("ex_3(" + std::to_string(c.n) + ", Berge-" + c.f + ") = " + str(res.optimum) + ", expected " +
                   str(c.expected));
        }
        if (res.witness && oracle::contains_berge(*res.witness, parse_pattern(c.f))) o.fail("witness contains the pattern");
    }
    if (oracle::transversal_count(6, 3, 3) != 8) o.fail("|T_3(6,3)| != 8");
}

// 2 -------------------------------------------------------------------------

void generalized_turan(Outcome& o) {
    const auto t0 = Clock::now();
    for (int n = 1; n <= 7; ++n) {
        for (int k = 3; k <= 5; ++k) {
            const Graph kk = parse_pattern("K" + std::to_string(k));
            for (int r = 2; r < k; ++r) {
                const auto got = exact_generalized_turan(n, parse_pattern("K" + std::to_string(r)), kk);
                const auto want = count_cliques(turan_graph(n, k - 1), r);
                if (got != want) {
                    o.fail("ex(" + std::to_string(n) + ", K_" + std::to_string(r) + ", K_" + std::to_string(k) +
                           ") = " + str(got) + ", Turan count " + str(want));
                }
            }
        }
    }
    if (seconds_since(t0) >= 300.0) o.fail("over the 5 minute limit");
}

// 3 -------------------------------------------------------------------------

void red_blue_maximum(Outcome& o) {
    std::mt19937 rng(3);
    std::size_t runs = 0;
    for (int n = 1; n <= 5; ++n) {
        for (int k = 3; k <= 5; ++k) {
            const int r = 3;
            const Graph t = turan_graph(n, k - 1);
            const std::uint64_t want = std::max<std::uint64_t>(t.size(), count_cliques(t, r));
            const auto res = max_g_r(n, k, r);
            if (!res.exact || res.optimum != want) {
                o.fail("max g_3 at n=" + std::to_string(n) + ", k=" + std::to_string(k) + " is " + str(res.optimum) +
                       ", expected " + str(want));
            }
            // Zykov endpoints from every colouring of every K_k-free graph class (random
            // colourings when there are more than 256).
            const Graph kk = parse_pattern("K" + std::to_string(k));
            std::vector<Graph> graphs;
            generate_levels(
                n, 2, [&](const Hypergraph& h, std::size_t) { return !contains_subgraph(as_graph(h), kk); }, {},
                [&](std::size_t, const GenerationLevel& level) {
                    for (const auto& rep : level.reps) graphs.push_back(as_graph(rep));
                });
            for (const Graph& g : graphs) {
                const std::size_t m = g.size();
                const bool all = m <= 8;
                const std::size_t count = all ? (std::size_t{1} << m) : 256;
                for (std::size_t mask = 0; mask < count; ++mask) {
                    const std::size_t bits = all ? mask : static_cast<std::size_t>(rng());
                    std::vector<Color> c(m);
                    for (std::size_t i = 0; i < m; ++i) c[i] = (bits >> i & 1u) ? Color::red : Color::blue;
                    const RedBlueGraph start(g, c);
                    const auto trace = zykov_run(start, k, r);
                    const auto rep = check_endpoint(trace.final_graph);
                    ++runs;
                    if (!rep.complete_multipartite || !rep.monochromatic) {
                        o.fail("zykov endpoint not complete multipartite and monochromatic from " + to_text(start));
                    }
                    if (g_r(trace.final_graph, r) > want || g_r(trace.final_graph, r) < g_r(start, r)) {
                        o.fail("zykov run left the range [g_r(start), max]");
                    }
                }
            }
        }
    }
    if (o.ok) o.detail << runs << " zykov runs";
}

// 4 -------------------------------------------------------------------------

void lemma_property(Outcome& o) {
    std::mt19937 rng(4);
    std::vector<Hypergraph> hs;
    std::uniform_int_distribution<int> order(3, 7);
    for (int i = 0; i < 500; ++i) {
        const int n = order(rng);
        hs.push_back(oracle::random_hypergraph(rng, n, 3, binomial(n, 3)));
    }
    for (int n = 3; n <= 7; ++n) {
        for (int parts = 1; parts <= n; ++parts) hs.push_back(turan_hypergraph(n, parts, 3));
        for (int k = 2; k <= 4; ++k) {
            if (static_cast<std::uint64_t>(n * (k - 1) / 3) <= binomial(n, 3)) hs.push_back(near_regular_construction(n, k, 3));
        }
    }
    for (int k = 3; k <= 5; ++k) hs.push_back(partition_construction(k * (7 / k), k, 3));
    for (const std::string f : {"K3", "P3", "C4", "S3", "P2", "K2,2"}) hs.push_back(expansion(parse_pattern(f), 3));

    const std::vector<std::string> patterns = {"K3", "K4", "P3", "C4"};
    std::size_t checks = 0;
    for (const auto& h : hs) {
        const auto d = decompose_red_blue(h);
        if (h.size() > g_r(d.shadow, 3)) o.fail("|E(H)| > g_r(shadow) for " + to_text(h));
        for (const auto& name : patterns) {
            const Graph f = parse_pattern(name);
            if (contains_berge(h, f)) continue;
            ++checks;
            if (oracle::contains_subgraph(d.shadow.graph(), f)) o.fail("shadow contains " + name + " for " + to_text(h));
        }
    }
    if (o.ok) o.detail << hs.size() << " hypergraphs, " << checks << " free-pattern checks";
}

// 5 -------------------------------------------------------------------------

struct TreeCase {
    std::string name;
    Graph tree;
    bool is_path;
    bool is_star;
};

BoundValue eval(Theorem t, std::map<std::string, Rational> params) {
    BoundSpec s;
    s.theorem = t;
    s.params = std::move(params);
    return evaluate(s);
}

std::string conditional_summary;

void tree_bounds(Outcome& o) {
    const std::vector<TreeCase> trees = {
        {"P1", parse_pattern("P1"), true, true},         {"P2", parse_pattern("P2"), true, true},
        {"P3", parse_pattern("P3"), true, false},        {"S3", parse_pattern("S3"), false, true},
        {"P4", parse_pattern("P4"), true, false},        {"S4", parse_pattern("S4"), false, true},
        {"spider:1,1,2", parse_pattern("spider:1,1,2"), false, false},
    };
    const int r = 3;
    std::size_t comparisons = 0, conditional_checked = 0, conditional_violations = 0;
    for (const auto& t : trees) {
        const long long k = static_cast<long long>(t.tree.size());
        const long long delta = t.tree.max_degree();
        for (int n = 1; n <= 7; ++n) {
            const auto res = max_berge_free(n, r, t.tree);
            if (!res.exact) {
                o.fail("search not exact for " + t.name);
                continue;
            }
            const Rational opt(res.optimum);
            std::vector<std::pair<std::string, Rational>> arms;
            const std::map<std::string, Rational> p{{"n", n}, {"k", k}, {"r", r}, {"delta", delta}};
            if (t.is_path && ((k > r + 1 && r + 1 > 3) || (k == r + 1 && k > 2) || (r >= k && k > 2))) {
                arms.emplace_back("gkl-path", eval(Theorem::gkl_path, p).value);
            }
            if (k <= r) arms.emplace_back("tree-delta", eval(Theorem::tree_delta, p).value);
            arms.emplace_back("tree-prop35", eval(Theorem::tree_prop35, p).value);
            if (t.is_star) arms.emplace_back("star", eval(Theorem::star, p).value);
            for (const auto& [arm, value] : arms) {
                ++comparisons;
                if (opt > value) {
                    o.fail("ex_3(" + std::to_string(n) + ", Berge-" + t.name + ") = " + str(res.optimum) + " > " + arm +
                           " = " + value.str());
                }
            }
            const auto es = eval(Theorem::trees_es, p);
            ++conditional_checked;
            if (opt > es.value) ++conditional_violations;
        }
    }
    for (int k = 2; k <= 3; ++k) {
        for (int n = 4; n <= 6; ++n) {
            const auto res = max_berge_free(n, r, parse_pattern("S" + std::to_string(k)));
            const auto formula = static_cast<std::uint64_t>(n * (k - 1) / r);
            const auto b = eval(Theorem::star, {{"n", n}, {"k", k}, {"r", r}});
            if (!res.exact || res.optimum != formula || b.value != Rational(formula)) {
                o.fail("ex_3(" + std::to_string(n) + ", Berge-S_" + std::to_string(k) + ") = " + str(res.optimum) +
                       ", formula " + str(formula));
            }
        }
    }
    if (o.ok) o.detail << comparisons << " unconditional comparisons, star exactness n=4..6";
    conditional_summary = std::to_string(conditional_checked) + " conditional (ErdosSosForAllTrees) comparisons, " +
                          std::to_string(conditional_violations) + " violations";
}

// 6 -------------------------------------------------------------------------

void oracle_equivalence(Outcome& o) {
    std::mt19937 rng(6);
    std::uniform_int_distribution<int> order(3, 7), uni(2, 4), fo(2, 5);
    std::size_t positives = 0;
    for (int i = 0; i < 1000; ++i) {
        const int n = order(rng);
        const int r = std::min(uni(rng), n);
        const Hypergraph h = oracle::random_hypergraph(rng, n, r, 6);
        Graph f;
        do {
            f = oracle::random_graph(rng, fo(rng), 0.5);
        } while (f.size() == 0 || f.size() > 4);
        const auto cert = contains_berge(h, f);
        const bool brute = oracle::contains_berge(h, f);
        positives += brute;
        if (cert.has_value() != brute) o.fail("disagreement on " + to_text(h) + " with " + to_text(f));
        if (cert && !is_valid_certificate(h, f, *cert)) o.fail("invalid certificate");
    }
    if (o.ok) o.detail << "1000 instances, " << positives << " containing";
}

// 7 -------------------------------------------------------------------------

void matching_module(Outcome& o) {
    std::mt19937 rng(7);
    std::uniform_int_distribution<std::size_t> left(0, 5), right(0, 10), mult(1, 3);
    std::uniform_real_distribution<double> density(0.1, 0.8);
    std::size_t violated = 0;
    for (int i = 0; i < 200; ++i) {
        const auto x = oracle::random_incidence(rng, left(rng), right(rng), density(rng));
        const std::size_t d = mult(rng);
        const auto v = hall_violator(x, d);
        const bool brute = oracle::hall_violated(x, d);
        violated += brute;
        if (v.has_value() != brute) o.fail("Hall violator presence disagrees");
        if (v) {
            std::uint32_t mask = 0;
            for (std::size_t a : *v) mask |= 1u << a;
            if (v->empty() || oracle::neighborhood_size(x, mask) >= d * v->size()) o.fail("returned set is not a violator");
        }
        const auto p = assign_private_sets(x, d);
        if (p.sets.has_value() == brute) o.fail("private sets exist iff Hall holds");
        if (p.sets) {
            std::set<std::size_t> used;
            for (std::size_t a = 0; a < x.left_size(); ++a) {
                if ((*p.sets)[a].size() != d) o.fail("private set of wrong size");
                for (std::size_t b : (*p.sets)[a]) {
                    if (!x.adjacent(a, b) || !used.insert(b).second) o.fail("private sets not disjoint subsets of N(a)");
                }
            }
        }
    }
    if (o.ok) o.detail << "200 trials, " << violated << " violating";
}

// 8 -------------------------------------------------------------------------

void coefficients(Outcome& o) {
    auto check = [&](const std::string& what, Theorem t, std::map<std::string, Rational> params,
                     std::vector<Rational> ex, const Rational& want) {
        BoundSpec s;
        s.theorem = t;
        s.params = std::move(params);
        for (const auto& v : ex) s.ex_inputs.push_back(ExInput{v, std::nullopt, ""});
        const Rational got = evaluate(s).value;
        if (got != want) o.fail(what + " = " + got.str() + ", expected " + want.str());
    };
    check("(2k-3)/3 at k=3", Theorem::c2k, {{"k", 3}, {"r", 3}, {"n", 10}}, {1}, 1);
    check("(2k-3)/3 at k=5", Theorem::c2k, {{"k", 5}, {"r", 3}, {"n", 10}}, {3}, 7);
    check("GKL k=6 r=3 n=60", Theorem::gkl_path, {{"k", 6}, {"r", 3}, {"n", 60}}, {}, 200);
    check("K_{2,t} t=4 r=3", Theorem::k2t, {{"t", 4}, {"r", 3}}, {}, Rational(1, 2));
    check("K_{2,t} t=7 r=4", Theorem::k2t, {{"t", 7}, {"r", 4}}, {}, Rational(35, 28));
    check("theta k=3 t=3 r=3", Theorem::theta, {{"k", 3}, {"t", 3}, {"r", 3}, {"n", 10}}, {1}, Rational(5, 3));
    check("theta k=2 t=2 r=2", Theorem::theta, {{"k", 2}, {"t", 2}, {"r", 2}, {"n", 10}}, {1}, Rational(1, 2));
    check("forest deletion k=7 r=3", Theorem::forest_deletion, {{"k", 7}, {"r", 3}, {"n", 10}}, {1}, Rational(8, 3));
    check("deletion lemma c=9/2 r=3", Theorem::deletion_lemma, {{"r", 3}, {"c", Rational(9, 2)}, {"n", 10}}, {1}, 3);
    check("prop 3.5 k=5 r=3 n=5", Theorem::tree_prop35, {{"k", 5}, {"r", 3}, {"n", 5}}, {}, 40);
    const auto k2t = eval(Theorem::k2t, {{"t", 4}, {"r", 3}});
    if (!k2t.asymptotic || k2t.sqrt_factor != Rational(3) || k2t.exponent != "3/2") o.fail("K_{2,t} descriptor");
}

} // namespace

int main() {
    report(1, "exact values ex_3(n<=4,K4)=C(n,3), ex_3(5,K4)=5, ex_3(5,K5)=9, ex_3(6,K4)=8", exact_values);
    report(2, "ex(n,K_r,K_k) = N(K_r, T(n,k-1)) for n<=7, k in 3..5, r<k", generalized_turan, 300);
    report(3, "max g_3 = max{e(T), N(K_3,T)} for n<=5 and zykov endpoints", red_blue_maximum);
    report(4, "|E(H)| <= g_r(shadow) and F-free shadows", lemma_property);
    report(5, "tree search optima under unconditional bound arms, star exactness", tree_bounds);
    std::printf("INFO criterion 5 (conditional arms, reported separately): %s\n", conditional_summary.c_str());
    report(6, "contains_berge agrees with brute force on 1000 instances", oracle_equivalence, 120);
    report(7, "Hall violators and private sets against subset enumeration", matching_module);
    report(8, "coefficient evaluators against hand computation", coefficients);
    std::printf("%s: %d failing criteria\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
    return failures == 0 ? 0 : 1;
}
