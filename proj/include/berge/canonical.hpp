#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "berge/core.hpp"

namespace berge {

/// Isomorphism-class key: two objects get equal keys iff they are isomorphic.
struct CanonicalForm {
    std::string key;
    auto operator<=>(const CanonicalForm&) const = default;
};

struct CanonicalLabeling {
    CanonicalForm form;
    std::vector<Vertex> perm; // perm[old vertex] = canonical label
};

namespace detail {

inline std::uint64_t vertex_mask(const VertexSet& e) {
    std::uint64_t m = 0;
    for (Vertex v : e) m |= std::uint64_t{1} << v;
    return m;
}

/// Equitable-style colour refinement: start from degrees, then repeatedly split
/// by the multiset of colour patterns of incident hyperedges. Colours are ranks of
/// sorted signatures, so they are isomorphism invariant.
inline std::vector<int> refine_colors(const Hypergraph& h) {
    const int n = h.order();
    std::vector<int> color(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) color[v] = h.degree(v);
    int classes = -1;
    while (true) {
        std::vector<std::vector<int>> sig(static_cast<std::size_t>(n));
        for (Vertex v = 0; v < n; ++v) {
            std::vector<std::vector<int>> parts;
            for (std::size_t ei : h.incident(v)) {
                std::vector<int> others;
                for (Vertex w : h.edge(ei)) {
                    if (w != v) others.push_back(color[w]);
                }
                std::sort(others.begin(), others.end());
                parts.push_back(std::move(others));
            }
            std::sort(parts.begin(), parts.end());
            sig[v].push_back(color[v]);
            for (const auto& p : parts) {
                sig[v].push_back(-1);
                sig[v].insert(sig[v].end(), p.begin(), p.end());
            }
        }
        auto sorted = sig;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        for (Vertex v = 0; v < n; ++v) {
            color[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sig[v]) - sorted.begin());
        }
        const int now = static_cast<int>(sorted.size());
        if (now == classes) break;
        classes = now;
    }
    return color;
}

/// twin[v] = smallest vertex w such that the transposition (v w) is an automorphism.
inline std::vector<Vertex> twin_classes(const Hypergraph& h, const std::vector<int>& color,
                                        const std::vector<std::uint64_t>& edge_masks) {
    const int n = h.order();
    std::vector<Vertex> twin(static_cast<std::size_t>(n));
    std::iota(twin.begin(), twin.end(), 0);
    auto is_edge = [&](std::uint64_t m) { return std::binary_search(edge_masks.begin(), edge_masks.end(), m); };
    auto swap_ok = [&](Vertex u, Vertex v) {
        const std::uint64_t bu = std::uint64_t{1} << u, bv = std::uint64_t{1} << v;
        for (Vertex a : {u, v}) {
            for (std::size_t ei : h.incident(a)) {
                std::uint64_t m = vertex_mask(h.edge(ei));
                if ((m & bu) && (m & bv)) continue;
                m ^= bu | bv;
                if (!is_edge(m)) return false;
            }
        }
        return true;
    };
    for (Vertex v = 0; v < n; ++v) {
        for (Vertex u = 0; u < v; ++u) {
            if (twin[u] == u && color[u] == color[v] && h.degree(u) == h.degree(v) && swap_ok(u, v)) {
                twin[v] = u;
                break;
            }
        }
    }
    return twin;
}

} // namespace detail

/// Canonical labeling by exhaustive search over labelings that respect the refined
/// colour partition, keeping the one whose colex-ordered r-set indicator string is
/// lexicographically greatest. Prefix comparison prunes branches; interchangeable
/// (twin) vertices are only tried in index order.
inline CanonicalLabeling canonical_labeling(const Hypergraph& h) {
    const int n = h.order();
    const int r = h.uniformity();
    if (n > 64) throw DomainError("canonical form: at most 64 vertices supported");

    std::vector<std::uint64_t> edge_masks;
    edge_masks.reserve(h.size());
    for (const auto& e : h.edges()) edge_masks.push_back(detail::vertex_mask(e));
    std::sort(edge_masks.begin(), edge_masks.end());

    const auto color = detail::refine_colors(h);
    const auto twin = detail::twin_classes(h, color, edge_masks);

    std::vector<Vertex> by_color(static_cast<std::size_t>(n));
    std::iota(by_color.begin(), by_color.end(), 0);
    std::stable_sort(by_color.begin(), by_color.end(), [&](Vertex a, Vertex b) { return color[a] < color[b]; });
    std::vector<int> slot_color(static_cast<std::size_t>(n));
    for (int p = 0; p < n; ++p) slot_color[p] = color[by_color[p]];

    // (r-1)-subsets of earlier labels, in colex order, for every position.
    std::vector<std::vector<std::uint64_t>> earlier(static_cast<std::size_t>(n));
    std::vector<std::size_t> offset(static_cast<std::size_t>(n) + 1, 0);
    for (int p = 0; p < n; ++p) {
        std::vector<int> pick;
        auto gen = [&](auto&& self, int start, int need) -> void {
            if (need == 0) {
                std::uint64_t m = 0;
                for (int x : pick) m |= std::uint64_t{1} << x;
                earlier[p].push_back(m);
                return;
            }
            for (int x = start; x <= p - need; ++x) {
                pick.push_back(x);
                self(self, x + 1, need - 1);
                pick.pop_back();
            }
        };
        gen(gen, 0, r - 1);
        std::sort(earlier[p].begin(), earlier[p].end(), [](std::uint64_t a, std::uint64_t b) {
            // colex: compare by highest differing element
            if (a == b) return false;
            const std::uint64_t diff = a ^ b;
            const std::uint64_t top = std::uint64_t{1} << (63 - __builtin_clzll(diff));
            return (b & top) != 0;
        });
        offset[p + 1] = offset[p] + earlier[p].size();
    }
    const std::size_t total = offset[n];

    std::vector<char> cur(total, 0), best(total, 0);
    bool have_best = false;
    std::vector<Vertex> label_to_vertex(static_cast<std::size_t>(n), -1), best_inv;
    std::vector<char> used(static_cast<std::size_t>(n), 0);

    auto is_edge = [&](std::uint64_t m) {
        return std::binary_search(edge_masks.begin(), edge_masks.end(), m);
    };

    auto place = [&](auto&& self, int p) -> void {
        if (p == n) {
            if (!have_best || std::lexicographical_compare(best.begin(), best.end(), cur.begin(), cur.end())) {
                best = cur;
                best_inv = label_to_vertex;
                have_best = true;
            }
            return;
        }
        for (int q = 0; q < n; ++q) {
            const Vertex x = by_color[q];
            if (used[x] || color[x] != slot_color[p]) continue;
            bool skip = false;
            for (Vertex y = twin[x]; y < x; ++y) {
                if (!used[y] && twin[y] == twin[x]) {
                    skip = true;
                    break;
                }
            }
            if (skip) continue;
            label_to_vertex[p] = x;
            for (std::size_t i = 0; i < earlier[p].size(); ++i) {
                std::uint64_t m = std::uint64_t{1} << x;
                std::uint64_t labels = earlier[p][i];
                while (labels) {
                    const int l = __builtin_ctzll(labels);
                    labels &= labels - 1;
                    m |= std::uint64_t{1} << label_to_vertex[l];
                }
                cur[offset[p] + i] = is_edge(m) ? 1 : 0;
            }
            const std::size_t end = offset[p + 1];
            if (have_best && std::lexicographical_compare(cur.begin(), cur.begin() + static_cast<std::ptrdiff_t>(end),
                                                          best.begin(),
                                                          best.begin() + static_cast<std::ptrdiff_t>(end))) {
                continue;
            }
            used[x] = 1;
            self(self, p + 1);
            used[x] = 0;
        }
        label_to_vertex[p] = -1;
    };
    place(place, 0);

    CanonicalLabeling out;
    out.perm.assign(static_cast<std::size_t>(n), 0);
    for (int p = 0; p < n; ++p) out.perm[best_inv.empty() ? p : best_inv[p]] = p;
    std::string key;
    key.push_back(static_cast<char>(n));
    key.push_back(static_cast<char>(r));
    for (std::size_t i = 0; i < total; i += 8) {
        unsigned char byte = 0;
        for (std::size_t j = i; j < std::min(total, i + 8); ++j) byte = static_cast<unsigned char>((byte << 1) | best[j]);
        key.push_back(static_cast<char>(byte));
    }
    out.form.key = std::move(key);
    return out;
}

inline CanonicalForm canonical_form(const Hypergraph& h) { return canonical_labeling(h).form; }

inline CanonicalForm canonical_form(const Graph& g) { return canonical_form(Hypergraph::from_graph(g)); }

inline Hypergraph canonical_representative(const Hypergraph& h) {
    return h.relabeled(canonical_labeling(h).perm);
}

} // namespace berge
