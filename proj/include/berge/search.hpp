#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "berge/berge.hpp"
#include "berge/bounds.hpp"
#include "berge/constructions.hpp"
#include "berge/core.hpp"
#include "berge/error.hpp"
#include "berge/generate.hpp"

namespace berge {

struct SearchConfig {
    std::uint64_t node_budget = 50'000'000;
    int jobs = 1;
    std::optional<BoundSpec> prune_with_bound; // only unconditional finite upper bounds prune
    bool record_witness = true;
    bool enforce_guards = true;
    std::uint64_t containment_budget = 20'000'000; // per Berge containment check
};

struct SearchResult {
    std::uint64_t optimum = 0;
    std::optional<Hypergraph> witness;
    std::optional<RedBlueGraph> red_blue_witness;
    std::uint64_t nodes = 0;
    bool exact = true;
};

namespace detail {

inline std::optional<std::size_t> pruning_cap(const SearchConfig& cfg) {
    if (!cfg.prune_with_bound) return std::nullopt;
    const BoundValue b = evaluate(*cfg.prune_with_bound);
    if (b.asymptotic || !b.assumptions.empty() || b.direction == Direction::lower) return std::nullopt;
    return static_cast<std::size_t>(boost::multiprecision::numerator(floor_of(b.value)));
}

} // namespace detail

/// ex_r(n, Berge-F) by isomorph-free generation of the Berge-F-free r-graphs,
/// one hyperedge at a time. Each new hyperedge is checked only for copies through it.
inline SearchResult max_berge_free(int n, int r, const Graph& f, const SearchConfig& cfg = {}) {
    if (r < 2 || n < 0) throw DomainError("search: need r >= 2 and n >= 0");
    if (cfg.enforce_guards && (n > 8 || binomial(n, r) > 70)) {
        throw DomainError("search: n=" + std::to_string(n) + ", r=" + std::to_string(r) +
                          " exceeds the guard n <= 8, C(n,r) <= 70");
    }
    if (cfg.node_budget < 1) throw DomainError("search: node budget must be at least 1");
    std::atomic<bool> containment_exhausted{false};
    auto accept = [&](const Hypergraph& child, std::size_t added) {
        BergeSearchOptions opts;
        opts.node_budget = cfg.containment_budget;
        opts.required_hyperedge = added;
        const auto res = find_berge(child, f, opts);
        if (res.status == SearchStatus::budget_exhausted) containment_exhausted = true;
        return res.status == SearchStatus::absent;
    };
    GenerationConfig gen;
    gen.node_budget = cfg.node_budget;
    gen.jobs = cfg.jobs;
    gen.stop_at_edges = detail::pruning_cap(cfg);
    auto result = generate_levels(n, r, accept, gen);

    SearchResult out;
    out.optimum = result.level_sizes.size() - 1;
    out.nodes = result.nodes;
    out.exact = result.exact && !containment_exhausted;
    if (cfg.record_witness) out.witness = result.top.reps.front();
    return out;
}

namespace detail {

/// Best g_r over all colourings of one graph: depth-first over edges (red first),
/// bounded by red + undecided + number of r-cliques without a red edge.
class ColoringSearch {
public:
    ColoringSearch(const Graph& g, int r, std::uint64_t budget) : g_(g), budget_(budget) {
        const auto& edges = g.edges();
        edge_cliques_.resize(edges.size());
        std::vector<Vertex> pick;
        auto gen = [&](auto&& self, Vertex start) -> void {
            if (static_cast<int>(pick.size()) == r) {
                const std::size_t id = clique_red_.size();
                clique_red_.push_back(0);
                for (std::size_t a = 0; a < pick.size(); ++a) {
                    for (std::size_t b = a + 1; b < pick.size(); ++b) {
                        edge_cliques_[*g.edge_index(pick[a], pick[b])].push_back(id);
                    }
                }
                return;
            }
            for (Vertex v = start; v < g.order(); ++v) {
                bool ok = true;
                for (Vertex u : pick) ok = ok && g.adjacent(u, v);
                if (!ok) continue;
                pick.push_back(v);
                self(self, v + 1);
                pick.pop_back();
            }
        };
        gen(gen, 0);
        clean_cliques_ = clique_red_.size();
        colors_.assign(edges.size(), Color::blue);
    }

    void run(std::uint64_t floor_value) {
        best_ = floor_value;
        dfs(0, 0);
    }

    std::uint64_t best() const { return best_; }
    const std::optional<std::vector<Color>>& best_colors() const { return best_colors_; }
    std::uint64_t nodes() const { return nodes_; }
    bool exhausted() const { return exhausted_; }

private:
    void dfs(std::size_t i, std::uint64_t red) {
        if (exhausted_) return;
        if (++nodes_ > budget_) {
            exhausted_ = true;
            return;
        }
        const std::size_t m = g_.size();
        if (red + (m - i) + clean_cliques_ <= best_) return;
        if (i == m) {
            best_ = red + clean_cliques_;
            best_colors_ = colors_;
            return;
        }
        // red
        colors_[i] = Color::red;
        for (std::size_t c : edge_cliques_[i]) {
            if (clique_red_[c]++ == 0) --clean_cliques_;
        }
        dfs(i + 1, red + 1);
        for (std::size_t c : edge_cliques_[i]) {
            if (--clique_red_[c] == 0) ++clean_cliques_;
        }
        // blue
        colors_[i] = Color::blue;
        dfs(i + 1, red);
    }

    const Graph& g_;
    std::uint64_t budget_;
    std::vector<std::vector<std::size_t>> edge_cliques_;
    std::vector<int> clique_red_;
    std::size_t clean_cliques_ = 0;
    std::vector<Color> colors_;
    std::uint64_t best_ = 0;
    std::optional<std::vector<Color>> best_colors_;
    std::uint64_t nodes_ = 0;
    bool exhausted_ = false;
};

} // namespace detail

/// max g_r(G) over K_k-free red-blue graphs on n vertices: every K_k-free graph up
/// to isomorphism, each with a bounded search over its colourings.
inline SearchResult max_g_r(int n, int k, int r, const SearchConfig& cfg = {}) {
    if (r < 2 || k < 2 || n < 0) throw DomainError("g-r search: need r >= 2, k >= 2 and n >= 0");
    if (cfg.enforce_guards && n > 7) throw DomainError("g-r search: n=" + std::to_string(n) + " exceeds the guard n <= 7");
    const Graph kk = build_pattern({PatternKind::clique, {k}, std::nullopt});
    auto accept = [&](const Hypergraph& child, std::size_t) { return !contains_subgraph(as_graph(child), kk); };
    std::vector<Graph> graphs;
    GenerationConfig gen;
    gen.node_budget = cfg.node_budget;
    gen.jobs = cfg.jobs;
    auto result = generate_levels(n, 2, accept, gen, [&](std::size_t, const GenerationLevel& level) {
        for (const auto& rep : level.reps) graphs.push_back(as_graph(rep));
    });

    SearchResult out;
    out.nodes = result.nodes;
    out.exact = result.exact;
    std::optional<RedBlueGraph> witness;
    bool have = false;
    for (const Graph& g : graphs) {
        if (out.nodes >= cfg.node_budget) {
            out.exact = false;
            break;
        }
        detail::ColoringSearch search(g, r, cfg.node_budget - out.nodes);
        search.run(have ? out.optimum : 0);
        out.nodes += search.nodes();
        if (search.exhausted()) out.exact = false;
        if (search.best_colors() && (!have || search.best() > out.optimum)) {
            out.optimum = search.best();
            witness = RedBlueGraph(g, *search.best_colors());
            have = true;
        }
    }
    if (!have) {
        witness = RedBlueGraph(Graph(n), {});
        out.optimum = 0;
    }
    if (cfg.record_witness) out.red_blue_witness = witness;
    return out;
}

struct ThresholdRow {
    int n = 0;
    std::uint64_t turan = 0;   // |T_r(n, k-1)|
    std::uint64_t optimum = 0; // ex_r(n, Berge-K_k) by search
    bool turan_optimal = false;
    bool exact = true;
};

struct ThresholdReport {
    int k = 0, r = 0, n_max = 0;
    std::vector<ThresholdRow> rows;
    /// Smallest n0 <= n_max with the Turán hypergraph optimal for all n0 <= n <= n_max;
    /// verified on the tested range only.
    std::optional<int> empirical_n0;
    bool exact = true;
};

inline ThresholdReport threshold_n0(int k, int r, int n_max, const SearchConfig& cfg = {}) {
    if (r >= k) throw DomainError("threshold: need r < k");
    if (n_max < 0) throw DomainError("threshold: need n_max >= 0");
    const Graph kk = build_pattern({PatternKind::clique, {k}, std::nullopt});
    ThresholdReport report;
    report.k = k;
    report.r = r;
    report.n_max = n_max;
    for (int n = 0; n <= n_max; ++n) {
        ThresholdRow row;
        row.n = n;
        row.turan = turan_hypergraph_size(n, k - 1, r);
        const auto res = max_berge_free(n, r, kk, cfg);
        row.optimum = res.optimum;
        row.exact = res.exact;
        row.turan_optimal = res.exact && row.turan == row.optimum;
        report.exact = report.exact && res.exact;
        report.rows.push_back(row);
    }
    for (int n = n_max; n >= 0 && report.rows[static_cast<std::size_t>(n)].turan_optimal; --n) report.empirical_n0 = n;
    return report;
}

} // namespace berge
