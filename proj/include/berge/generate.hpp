#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <thread>
#include <vector>

#include "berge/canonical.hpp"
#include "berge/core.hpp"

namespace berge {

struct GenerationConfig {
    std::uint64_t node_budget = 50'000'000;
    int jobs = 1;
    std::optional<std::size_t> stop_at_edges; // a known upper bound: no need to look past it
};

/// One isomorphism class per entry, sorted by canonical key.
struct GenerationLevel {
    std::vector<CanonicalForm> keys;
    std::vector<Hypergraph> reps; // canonical representatives
};

struct GenerationResult {
    std::vector<std::size_t> level_sizes; // classes with 0, 1, 2, ... edges
    GenerationLevel top;                  // the last non-empty level
    std::uint64_t nodes = 0;              // candidate children examined
    bool exact = true;                    // false when the budget stopped generation early
};

/// Hereditary property test for a child obtained from an accepted parent by adding
/// the hyperedge with index `added` (index into child.edges()).
using AcceptFn = std::function<bool(const Hypergraph& child, std::size_t added)>;
using LevelFn = std::function<void(std::size_t edges, const GenerationLevel&)>;

namespace detail {

inline std::vector<VertexSet> all_r_sets(int n, int r) {
    std::vector<VertexSet> out;
    VertexSet pick;
    auto gen = [&](auto&& self, int start) -> void {
        if (static_cast<int>(pick.size()) == r) {
            out.push_back(pick);
            return;
        }
        for (int v = start; v < n; ++v) {
            pick.push_back(v);
            self(self, v + 1);
            pick.pop_back();
        }
    };
    gen(gen, 0);
    return out;
}

struct Extension {
    CanonicalForm key;
    Hypergraph rep;
};

inline std::vector<Extension> extend_chunk(const std::vector<Hypergraph>& parents, std::size_t begin, std::size_t end,
                                           const std::vector<VertexSet>& r_sets, const AcceptFn& accept) {
    std::map<CanonicalForm, bool> seen;
    std::vector<Extension> out;
    for (std::size_t p = begin; p < end; ++p) {
        const Hypergraph& parent = parents[p];
        for (const auto& s : r_sets) {
            if (parent.contains(s)) continue;
            Hypergraph child = parent.with_edge(s);
            auto labeling = canonical_labeling(child);
            auto [it, fresh] = seen.emplace(labeling.form, false);
            if (!fresh) continue;
            if (!accept(child, *child.index_of(s))) continue;
            it->second = true;
            out.push_back({labeling.form, child.relabeled(labeling.perm)});
        }
    }
    return out;
}

} // namespace detail

inline Graph as_graph(const Hypergraph& h) {
    if (h.uniformity() != 2) throw DomainError("as_graph: hypergraph is not 2-uniform");
    std::vector<Edge> edges;
    for (const auto& e : h.edges()) edges.emplace_back(e[0], e[1]);
    return Graph(h.order(), std::move(edges));
}

/// Level-wise isomorph-free generation of the n-vertex r-graphs with a hereditary
/// property: level m+1 is every accepted one-edge extension of a level-m class,
/// deduplicated by canonical form. Because the property is closed under deleting
/// hyperedges, every class is reached. A level is only expanded when its full
/// candidate count fits in the remaining budget, so results never depend on `jobs`.
inline GenerationResult generate_levels(int n, int r, const AcceptFn& accept, const GenerationConfig& cfg = {},
                                        const LevelFn& visit = {}) {
    const auto r_sets = detail::all_r_sets(n, r);
    GenerationResult result;
    GenerationLevel level;
    Hypergraph empty(n, r, {});
    level.keys.push_back(canonical_form(empty));
    level.reps.push_back(empty);
    for (std::size_t m = 0;; ++m) {
        result.level_sizes.push_back(level.reps.size());
        if (visit) visit(m, level);
        const std::uint64_t candidates =
            static_cast<std::uint64_t>(level.reps.size()) * static_cast<std::uint64_t>(r_sets.size() - m);
        if (m == r_sets.size() || (cfg.stop_at_edges && m >= *cfg.stop_at_edges)) {
            result.top = std::move(level);
            return result;
        }
        if (result.nodes + candidates > cfg.node_budget) {
            result.exact = false;
            result.top = std::move(level);
            return result;
        }
        result.nodes += candidates;

        const std::size_t jobs = static_cast<std::size_t>(std::max(1, cfg.jobs));
        const std::size_t chunks = std::min(jobs, level.reps.size());
        std::vector<std::vector<detail::Extension>> parts(chunks);
        auto bounds_of = [&](std::size_t c) { return level.reps.size() * c / chunks; };
        if (chunks <= 1) {
            parts[0] = detail::extend_chunk(level.reps, 0, level.reps.size(), r_sets, accept);
        } else {
            std::vector<std::thread> workers;
            for (std::size_t c = 0; c < chunks; ++c) {
                workers.emplace_back([&, c] {
                    parts[c] = detail::extend_chunk(level.reps, bounds_of(c), bounds_of(c + 1), r_sets, accept);
                });
            }
            for (auto& w : workers) w.join();
        }

        std::vector<detail::Extension> merged;
        for (auto& part : parts) {
            for (auto& x : part) merged.push_back(std::move(x));
        }
        std::sort(merged.begin(), merged.end(), [](const auto& a, const auto& b) { return a.key < b.key; });
        merged.erase(std::unique(merged.begin(), merged.end(), [](const auto& a, const auto& b) { return a.key == b.key; }),
                     merged.end());
        if (merged.empty()) {
            result.top = std::move(level);
            return result;
        }
        GenerationLevel next;
        for (auto& x : merged) {
            next.keys.push_back(std::move(x.key));
            next.reps.push_back(std::move(x.rep));
        }
        level = std::move(next);
    }
}

} // namespace berge
