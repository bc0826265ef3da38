#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "berge/berge.hpp"
#include "berge/core.hpp"
#include "berge/error.hpp"

namespace berge {

enum class PatternKind { path, cycle, star, clique, complete_bipartite, theta, spider, tree };

/// A named pattern graph family with its integer parameters:
///   path {k}          P_k, k edges          cycle {k}   C_k
///   star {k}          S_k, k edges          clique {k}  K_k
///   complete_bipartite {s, t}               theta {k, t}: t paths of length k
///   spider {l1, l2, ...} leg lengths        tree: explicit graph
struct PatternFamily {
    PatternKind kind = PatternKind::path;
    std::vector<int> params;
    std::optional<Graph> explicit_tree;
};

namespace detail {

inline void require(bool ok, const std::string& what) {
    if (!ok) throw DomainError("pattern: " + what);
}

} // namespace detail

/// Hub and endpoint vertices get the smallest labels.
inline Graph build_pattern(const PatternFamily& p) {
    using detail::require;
    const auto& a = p.params;
    auto arity = [&](std::size_t n) { require(a.size() == n, "wrong number of parameters"); };
    std::vector<Edge> edges;
    switch (p.kind) {
    case PatternKind::path: {
        arity(1);
        require(a[0] >= 1, "path needs at least one edge");
        for (int i = 0; i < a[0]; ++i) edges.emplace_back(i, i + 1);
        return Graph(a[0] + 1, edges);
    }
    case PatternKind::cycle: {
        arity(1);
        require(a[0] >= 3, "cycle needs length at least 3");
        for (int i = 0; i < a[0]; ++i) edges.emplace_back(i, (i + 1) % a[0]);
        return Graph(a[0], edges);
    }
    case PatternKind::star: {
        arity(1);
        require(a[0] >= 1, "star needs at least one edge");
        for (int i = 1; i <= a[0]; ++i) edges.emplace_back(0, i);
        return Graph(a[0] + 1, edges);
    }
    case PatternKind::clique: {
        arity(1);
        require(a[0] >= 1, "clique needs at least one vertex");
        for (int i = 0; i < a[0]; ++i) {
            for (int j = i + 1; j < a[0]; ++j) edges.emplace_back(i, j);
        }
        return Graph(a[0], edges);
    }
    case PatternKind::complete_bipartite: {
        arity(2);
        require(a[0] >= 1 && a[1] >= 1, "complete bipartite parts must be non-empty");
        for (int i = 0; i < a[0]; ++i) {
            for (int j = 0; j < a[1]; ++j) edges.emplace_back(i, a[0] + j);
        }
        return Graph(a[0] + a[1], edges);
    }
    case PatternKind::theta: {
        arity(2);
        const int k = a[0], t = a[1];
        require(k >= 2 && t >= 2, "theta requires k >= 2 and t >= 2");
        int next = 2;
        for (int path = 0; path < t; ++path) {
            Vertex prev = 0;
            for (int step = 1; step < k; ++step) {
                edges.emplace_back(prev, next);
                prev = next++;
            }
            edges.emplace_back(prev, 1);
        }
        return Graph(next, edges);
    }
    case PatternKind::spider: {
        require(!a.empty(), "spider needs at least one leg");
        int next = 1;
        for (int len : a) {
            require(len >= 1, "spider legs must have positive length");
            Vertex prev = 0;
            for (int step = 0; step < len; ++step) {
                edges.emplace_back(prev, next);
                prev = next++;
            }
        }
        return Graph(next, edges);
    }
    case PatternKind::tree: {
        require(p.explicit_tree.has_value() && is_tree(*p.explicit_tree), "explicit tree is not a tree");
        return *p.explicit_tree;
    }
    }
    throw DomainError("pattern: unknown kind");
}

/// Parses K4, P3, S3, C6, K2,3, theta:3,4, spider:1,1,2, or falls back to a graph file.
inline Graph parse_pattern(const std::string& spec) {
    auto numbers = [&](const std::string& s) {
        std::vector<int> out;
        std::size_t i = 0;
        while (i < s.size()) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            if (j == i || j - i > 6) return std::optional<std::vector<int>>{};
            out.push_back(std::stoi(s.substr(i, j - i)));
            if (j == s.size()) break;
            if (s[j] != ',') return std::optional<std::vector<int>>{};
            i = j + 1;
            if (i == s.size()) return std::optional<std::vector<int>>{};
        }
        if (out.empty()) return std::optional<std::vector<int>>{};
        return std::optional<std::vector<int>>{out};
    };
    auto named = [&]() -> std::optional<PatternFamily> {
        for (auto [prefix, kind] : {std::pair{"theta:", PatternKind::theta}, std::pair{"spider:", PatternKind::spider}}) {
            const std::string pre = prefix;
            if (spec.rfind(pre, 0) == 0) {
                if (auto nums = numbers(spec.substr(pre.size()))) return PatternFamily{kind, *nums, std::nullopt};
                return std::nullopt;
            }
        }
        if (spec.size() < 2) return std::nullopt;
        auto nums = numbers(spec.substr(1));
        if (!nums) return std::nullopt;
        switch (spec[0]) {
        case 'K':
            if (nums->size() == 2) return PatternFamily{PatternKind::complete_bipartite, *nums, std::nullopt};
            return PatternFamily{PatternKind::clique, *nums, std::nullopt};
        case 'P': return PatternFamily{PatternKind::path, *nums, std::nullopt};
        case 'C': return PatternFamily{PatternKind::cycle, *nums, std::nullopt};
        case 'S': return PatternFamily{PatternKind::star, *nums, std::nullopt};
        default: return std::nullopt;
        }
    };
    if (auto family = named()) return build_pattern(*family);
    std::ifstream in(spec);
    if (!in) throw DomainError("pattern: '" + spec + "' is neither a known family nor a readable graph file");
    return read_graph(in);
}

/// Part index of every vertex of a balanced partition: vertex i goes to part i mod parts.
inline std::vector<int> balanced_parts(int n, int parts) {
    if (parts < 1) throw DomainError("balanced partition: need at least one part");
    std::vector<int> part(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) part[i] = i % parts;
    return part;
}

inline std::vector<int> balanced_part_sizes(int n, int parts) {
    std::vector<int> sizes(static_cast<std::size_t>(parts), 0);
    for (int p : balanced_parts(n, parts)) ++sizes[p];
    return sizes;
}

/// Complete multipartite graph with balanced parts (Turán graph T_2(n, parts)).
inline Graph turan_graph(int n, int parts) {
    if (n < 0) throw DomainError("turan_graph: negative n");
    const auto part = balanced_parts(n, parts);
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            if (part[u] != part[v]) edges.emplace_back(u, v);
        }
    }
    return Graph(n, std::move(edges));
}

/// All r-sets meeting every part of a balanced partition at most once. Empty when r > parts.
inline Hypergraph turan_hypergraph(int n, int parts, int r) {
    if (n < 0) throw DomainError("turan_hypergraph: negative n");
    const auto part = balanced_parts(n, parts);
    std::vector<VertexSet> edges;
    VertexSet pick;
    auto gen = [&](auto&& self, int start) -> void {
        if (static_cast<int>(pick.size()) == r) {
            edges.push_back(pick);
            return;
        }
        for (int v = start; v < n; ++v) {
            bool clash = false;
            for (Vertex u : pick) clash = clash || part[u] == part[v];
            if (clash) continue;
            pick.push_back(v);
            self(self, v + 1);
            pick.pop_back();
        }
    };
    if (r <= parts) gen(gen, 0);
    return Hypergraph(n, r, std::move(edges));
}

/// |T_r(n, parts)| as the r-th elementary symmetric polynomial of the part sizes.
inline std::uint64_t turan_hypergraph_size(int n, int parts, int r) {
    const auto sizes = balanced_part_sizes(n, parts);
    std::vector<std::uint64_t> e(static_cast<std::size_t>(r) + 1, 0);
    e[0] = 1;
    for (int s : sizes) {
        for (int j = r; j >= 1; --j) e[j] += e[j - 1] * static_cast<std::uint64_t>(s);
    }
    return e[r];
}

/// Disjoint complete r-graphs on consecutive blocks of k vertices.
inline Hypergraph partition_construction(int n, int k, int r) {
    if (k < 1 || n < 0 || n % k != 0) throw DomainError("partition_construction: k must divide n");
    if (r > k || r < 2) throw DomainError("partition_construction: need 2 <= r <= k");
    std::vector<VertexSet> edges;
    for (int base = 0; base < n; base += k) {
        VertexSet pick;
        auto gen = [&](auto&& self, int start) -> void {
            if (static_cast<int>(pick.size()) == r) {
                edges.push_back(pick);
                return;
            }
            for (int v = start; v < base + k; ++v) {
                pick.push_back(v);
                self(self, v + 1);
                pick.pop_back();
            }
        };
        gen(gen, base);
    }
    return Hypergraph(n, r, std::move(edges));
}

namespace detail {

/// Extends `edges` to `target` distinct r-sets with every degree <= cap, trying
/// r-sets in lexicographic order with backtracking. False when impossible.
inline bool complete_capped(int n, int r, int cap, std::size_t target, std::vector<VertexSet>& edges,
                            std::vector<int>& degree) {
    const std::size_t fixed = edges.size();
    auto taken = [&](const VertexSet& e) {
        return std::find(edges.begin(), edges.begin() + static_cast<std::ptrdiff_t>(fixed), e) !=
               edges.begin() + static_cast<std::ptrdiff_t>(fixed);
    };
    auto room = [&] {
        std::size_t free = 0;
        for (int d : degree) free += static_cast<std::size_t>(cap - d);
        return free;
    };
    // Edges added here are increasing in lex order, so no duplicates among them.
    auto rec = [&](auto&& self, const VertexSet& after) -> bool {
        if (edges.size() == target) return true;
        if (room() < (target - edges.size()) * static_cast<std::size_t>(r)) return false;
        bool found = false;
        VertexSet pick;
        auto gen = [&](auto&& next, int start) -> void {
            if (found) return;
            if (static_cast<int>(pick.size()) == r) {
                if (!(after < pick) || taken(pick)) return;
                const VertexSet e = pick;
                for (Vertex v : e) ++degree[v];
                edges.push_back(e);
                found = self(self, e);
                if (!found) {
                    edges.pop_back();
                    for (Vertex v : e) --degree[v];
                }
                return;
            }
            for (int v = start; v < n && !found; ++v) {
                if (degree[v] >= cap) continue;
                if (pick.empty() && !after.empty() && v < after[0]) continue;
                pick.push_back(v);
                next(next, v + 1);
                pick.pop_back();
            }
        };
        gen(gen, 0);
        return found;
    };
    return rec(rec, VertexSet{});
}

} // namespace detail

/// r-uniform hypergraph with maximum degree <= k-1 and exactly floor(n(k-1)/r) edges.
/// Blocks of r consecutive slots are cut from k-1 rounds over the cyclic vertex
/// order (round j rotated by j); blocks that repeat a vertex, repeat an earlier edge
/// or break the degree cap are skipped. The remaining edges are completed by a
/// lexicographic backtracking search, from scratch if the blocks cannot be
/// extended. Throws when no such hypergraph exists.
inline Hypergraph near_regular_construction(int n, int k, int r) {
    if (r < 2 || n < r) throw DomainError("near_regular_construction: need n >= r >= 2");
    if (k < 2) throw DomainError("near_regular_construction: need k >= 2");
    const std::size_t target = static_cast<std::size_t>(n) * static_cast<std::size_t>(k - 1) / static_cast<std::size_t>(r);
    std::vector<Vertex> slots;
    for (int round = 0; round < k - 1; ++round) {
        for (int i = 0; i < n; ++i) slots.push_back((round + i) % n);
    }
    std::vector<int> degree(static_cast<std::size_t>(n), 0);
    std::vector<VertexSet> edges;
    for (std::size_t b = 0; b < target; ++b) {
        VertexSet block(slots.begin() + static_cast<std::ptrdiff_t>(b * r),
                        slots.begin() + static_cast<std::ptrdiff_t>((b + 1) * r));
        std::sort(block.begin(), block.end());
        if (std::adjacent_find(block.begin(), block.end()) != block.end()) continue;
        if (std::find(edges.begin(), edges.end(), block) != edges.end()) continue;
        if (!std::all_of(block.begin(), block.end(), [&](Vertex v) { return degree[v] < k - 1; })) continue;
        for (Vertex v : block) ++degree[v];
        edges.push_back(block);
    }
    if (!detail::complete_capped(n, r, k - 1, target, edges, degree)) {
        edges.clear();
        std::fill(degree.begin(), degree.end(), 0);
        if (!detail::complete_capped(n, r, k - 1, target, edges, degree)) {
            throw DomainError("near_regular_construction: no r-graph with " + std::to_string(target) +
                              " edges and maximum degree " + std::to_string(k - 1) + " for n=" + std::to_string(n) +
                              ", r=" + std::to_string(r));
        }
    }
    Hypergraph h(n, r, std::move(edges));
    if (h.size() != target) throw std::logic_error("near_regular_construction: wrong edge count");
    for (Vertex v = 0; v < n; ++v) {
        if (h.degree(v) > k - 1) throw std::logic_error("near_regular_construction: degree cap violated");
    }
    return h;
}

/// F^{+r}: each edge of F padded with r-2 fresh vertices, appended after V(F) in edge order.
inline Hypergraph expansion(const Graph& f, int r) {
    if (r < 2) throw DomainError("expansion: r must be at least 2");
    int next = f.order();
    std::vector<VertexSet> edges;
    for (auto [u, v] : f.edges()) {
        VertexSet e{u, v};
        for (int i = 0; i < r - 2; ++i) e.push_back(next++);
        edges.push_back(std::move(e));
    }
    return Hypergraph(next, r, std::move(edges));
}

} // namespace berge
