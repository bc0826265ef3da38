#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "berge/core.hpp"
#include "berge/error.hpp"
#include "berge/matching.hpp"

namespace berge {

/// Witness of a Berge copy of F: an injective vertex map V(F) -> V(H) and an
/// injective assignment of the edges of F (in F.edges() order) to hyperedge indices,
/// each hyperedge containing the image of its edge.
struct BergeCertificate {
    std::vector<Vertex> core_map;
    std::vector<std::size_t> edge_map;

    bool operator==(const BergeCertificate&) const = default;
};

inline bool is_valid_certificate(const Hypergraph& h, const Graph& f, const BergeCertificate& c) {
    if (c.core_map.size() != static_cast<std::size_t>(f.order()) || c.edge_map.size() != f.size()) return false;
    std::vector<char> seen_v(static_cast<std::size_t>(h.order()), 0);
    for (Vertex x : c.core_map) {
        if (x < 0 || x >= h.order() || seen_v[x]) return false;
        seen_v[x] = 1;
    }
    std::vector<char> seen_e(h.size(), 0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const std::size_t e = c.edge_map[i];
        if (e >= h.size() || seen_e[e]) return false;
        seen_e[e] = 1;
        const auto& he = h.edge(e);
        auto [u, v] = f.edges()[i];
        if (!std::binary_search(he.begin(), he.end(), c.core_map[u]) ||
            !std::binary_search(he.begin(), he.end(), c.core_map[v])) {
            return false;
        }
    }
    return true;
}

enum class SearchStatus { found, absent, budget_exhausted };

struct BergeSearchOptions {
    std::uint64_t node_budget = 200'000'000;
    /// When set, only copies that use this hyperedge are searched for. Adding one
    /// hyperedge to a Berge-F-free hypergraph can only create copies through it.
    std::optional<std::size_t> required_hyperedge;
};

struct BergeSearchResult {
    SearchStatus status = SearchStatus::absent;
    std::optional<BergeCertificate> certificate;
    std::uint64_t nodes = 0;
};

namespace detail {

/// Partition of pattern vertices into twin classes: u ~ v when N(u)\{v} = N(v)\{u}.
/// Any permutation inside a class is an automorphism, so images may be required to
/// increase along each class.
inline std::vector<Vertex> graph_twin_roots(const Graph& f) {
    const int n = f.order();
    std::vector<Vertex> root(static_cast<std::size_t>(n));
    std::iota(root.begin(), root.end(), 0);
    auto twins = [&](Vertex u, Vertex v) {
        for (Vertex w = 0; w < n; ++w) {
            if (w == u || w == v) continue;
            if (f.adjacent(u, w) != f.adjacent(v, w)) return false;
        }
        return true;
    };
    for (Vertex v = 0; v < n; ++v) {
        for (Vertex u = 0; u < v; ++u) {
            if (root[u] == u && twins(u, v)) {
                root[v] = u;
                break;
            }
        }
    }
    return root;
}

/// BFS order seeded with `seeds`, neighbours by degree descending; further
/// components start at their max-degree vertex.
inline std::vector<Vertex> seeded_order(const Graph& f, const std::vector<Vertex>& seeds) {
    const int n = f.order();
    std::vector<Vertex> order;
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    auto by_degree = [&](Vertex a, Vertex b) {
        return f.degree(a) != f.degree(b) ? f.degree(a) > f.degree(b) : a < b;
    };
    for (Vertex s : seeds) {
        seen[s] = 1;
        order.push_back(s);
    }
    std::size_t head = 0;
    while (static_cast<int>(order.size()) < n || head < order.size()) {
        if (head == order.size()) {
            Vertex start = -1;
            for (Vertex v = 0; v < n; ++v) {
                if (!seen[v] && (start < 0 || by_degree(v, start))) start = v;
            }
            seen[start] = 1;
            order.push_back(start);
        }
        const Vertex v = order[head++];
        std::vector<Vertex> next;
        for (Vertex w : f.neighbors(v)) {
            if (!seen[w]) next.push_back(w);
        }
        std::sort(next.begin(), next.end(), by_degree);
        for (Vertex w : next) {
            seen[w] = 1;
            order.push_back(w);
        }
    }
    return order;
}

class BergeSearcher {
public:
    BergeSearcher(const Hypergraph& h, const Graph& f, const BergeSearchOptions& opts)
        : h_(h), f_(f), opts_(opts), twin_root_(graph_twin_roots(f)) {
        const int n = h.order();
        pair_edges_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), {});
        for (std::size_t i = 0; i < h.size(); ++i) {
            const auto& e = h.edge(i);
            for (std::size_t a = 0; a < e.size(); ++a) {
                for (std::size_t b = a + 1; b < e.size(); ++b) {
                    pair_edges_[pair_index(e[a], e[b])].push_back(i);
                    pair_edges_[pair_index(e[b], e[a])].push_back(i);
                }
            }
        }
        host_order_.resize(static_cast<std::size_t>(n));
        std::iota(host_order_.begin(), host_order_.end(), 0);
        std::stable_sort(host_order_.begin(), host_order_.end(),
                         [&](Vertex a, Vertex b) { return h.degree(a) > h.degree(b); });
    }

    BergeSearchResult run() {
        BergeSearchResult result;
        const int nf = f_.order();
        if (nf > h_.order() || f_.size() > h_.size()) return finish(result);
        if (opts_.required_hyperedge && *opts_.required_hyperedge >= h_.size()) {
            throw DomainError("find_berge: required hyperedge index out of range");
        }
        if (f_.size() == 0) {
            if (opts_.required_hyperedge) return finish(result);
            BergeCertificate c;
            for (int v = 0; v < nf; ++v) c.core_map.push_back(v);
            found_ = std::move(c);
            return finish(result);
        }

        if (!opts_.required_hyperedge) {
            search_from(detail::pattern_order(f_), {}, std::nullopt);
        } else {
            const std::size_t req = *opts_.required_hyperedge;
            const auto& e = h_.edge(req);
            for (std::size_t p = 0; p < f_.size() && !done(); ++p) {
                auto [a, b] = f_.edges()[p];
                auto order = seeded_order(f_, {a, b});
                for (Vertex x : e) {
                    for (Vertex y : e) {
                        if (x == y || done()) continue;
                        search_from(order, {x, y}, p);
                    }
                }
            }
        }
        return finish(result);
    }

private:
    std::size_t pair_index(Vertex u, Vertex v) const {
        return static_cast<std::size_t>(u) * static_cast<std::size_t>(h_.order()) + static_cast<std::size_t>(v);
    }

    bool done() const { return found_.has_value() || exhausted_; }

    BergeSearchResult finish(BergeSearchResult& result) {
        result.nodes = nodes_;
        if (found_) {
            result.status = SearchStatus::found;
            result.certificate = std::move(found_);
        } else {
            result.status = exhausted_ ? SearchStatus::budget_exhausted : SearchStatus::absent;
        }
        return result;
    }

    void search_from(const std::vector<Vertex>& order, const std::vector<Vertex>& preset,
                     std::optional<std::size_t> pinned_edge) {
        const int nf = f_.order();
        order_ = order;
        std::vector<int> rank(static_cast<std::size_t>(nf));
        for (int i = 0; i < nf; ++i) rank[order_[i]] = i;
        new_edges_.assign(static_cast<std::size_t>(nf), {});
        for (std::size_t i = 0; i < f_.size(); ++i) {
            if (pinned_edge && i == *pinned_edge) continue;
            auto [u, v] = f_.edges()[i];
            new_edges_[rank[u] > rank[v] ? u : v].push_back(i);
        }
        preset_ = preset;
        pinned_edge_ = pinned_edge;
        core_.assign(static_cast<std::size_t>(nf), -1);
        used_.assign(static_cast<std::size_t>(h_.order()), 0);
        edge_owner_.assign(h_.size(), std::nullopt);
        edge_assign_.assign(f_.size(), std::nullopt);
        place(0);
    }

    bool twin_ok(Vertex v, Vertex x) const {
        for (Vertex w = 0; w < f_.order(); ++w) {
            if (w == v || core_[w] < 0 || twin_root_[w] != twin_root_[v]) continue;
            if ((w < v) != (core_[w] < x)) return false;
        }
        return true;
    }

    bool usable(std::size_t pattern_edge, std::size_t hyperedge) const {
        return !(opts_.required_hyperedge && pinned_edge_ && hyperedge == *opts_.required_hyperedge &&
                 pattern_edge != *pinned_edge_);
    }

    bool augment(std::size_t pe, std::vector<char>& visited) {
        auto [u, v] = f_.edges()[pe];
        for (std::size_t he : pair_edges_[pair_index(core_[u], core_[v])]) {
            if (visited[he] || !usable(pe, he)) continue;
            visited[he] = 1;
            if (!edge_owner_[he] || augment(*edge_owner_[he], visited)) {
                edge_owner_[he] = pe;
                edge_assign_[pe] = he;
                return true;
            }
        }
        return false;
    }

    void place(int depth) {
        if (done()) return;
        const int nf = f_.order();
        if (depth == nf) {
            BergeCertificate c;
            c.core_map = core_;
            c.edge_map.resize(f_.size());
            for (std::size_t i = 0; i < f_.size(); ++i) {
                c.edge_map[i] = (pinned_edge_ && i == *pinned_edge_) ? *opts_.required_hyperedge : *edge_assign_[i];
            }
            found_ = std::move(c);
            return;
        }
        const Vertex v = order_[depth];
        auto try_image = [&](Vertex x) {
            if (used_[x] || h_.degree(x) < f_.degree(v) || !twin_ok(v, x)) return;
            if (++nodes_ > opts_.node_budget) {
                exhausted_ = true;
                return;
            }
            core_[v] = x;
            const auto saved_owner = edge_owner_;
            const auto saved_assign = edge_assign_;
            bool feasible = true;
            std::vector<char> visited(h_.size());
            for (std::size_t pe : new_edges_[v]) {
                std::fill(visited.begin(), visited.end(), 0);
                if (!augment(pe, visited)) {
                    feasible = false;
                    break;
                }
            }
            if (feasible) {
                used_[x] = 1;
                place(depth + 1);
                used_[x] = 0;
            }
            edge_owner_ = saved_owner;
            edge_assign_ = saved_assign;
            core_[v] = -1;
        };
        if (depth < static_cast<int>(preset_.size())) {
            try_image(preset_[depth]);
            return;
        }
        for (Vertex x : host_order_) {
            if (done()) return;
            try_image(x);
        }
    }

    const Hypergraph& h_;
    const Graph& f_;
    BergeSearchOptions opts_;
    std::vector<Vertex> twin_root_;
    std::vector<std::vector<std::size_t>> pair_edges_;
    std::vector<Vertex> host_order_;

    std::vector<Vertex> order_;
    std::vector<std::vector<std::size_t>> new_edges_;
    std::vector<Vertex> preset_;
    std::optional<std::size_t> pinned_edge_;
    std::vector<Vertex> core_;
    std::vector<char> used_;
    std::vector<std::optional<std::size_t>> edge_owner_;
    std::vector<std::optional<std::size_t>> edge_assign_;

    std::optional<BergeCertificate> found_;
    std::uint64_t nodes_ = 0;
    bool exhausted_ = false;
};

} // namespace detail

/// Backtracking over injective core maps V(F) -> V(H) in max-degree-first BFS order,
/// host candidates by hyperdegree descending. After every extension the placed
/// pattern edges must still admit a system of distinct hyperedges (checked by
/// augmenting the incremental matching), which prunes most branches early.
inline BergeSearchResult find_berge(const Hypergraph& h, const Graph& f, const BergeSearchOptions& opts = {}) {
    return detail::BergeSearcher(h, f, opts).run();
}

/// Certificate iff H contains a Berge-F; throws BudgetExhausted instead of guessing.
inline std::optional<BergeCertificate> contains_berge(const Hypergraph& h, const Graph& f,
                                                      std::uint64_t node_budget = 200'000'000) {
    BergeSearchOptions opts;
    opts.node_budget = node_budget;
    auto result = find_berge(h, f, opts);
    if (result.status == SearchStatus::budget_exhausted) {
        throw BudgetExhausted("contains_berge: node budget of " + std::to_string(node_budget) + " exhausted");
    }
    return result.certificate;
}

// ---------------------------------------------------------------------------
// Red-blue decomposition

struct RedBlueDecomposition {
    RedBlueGraph shadow;
    std::vector<std::size_t> origin; // per shadow edge: the hyperedge it was matched to
    std::uint64_t bound = 0;         // g_r(shadow) with r = uniformity of H
    bool saturated = false;          // the matching covered every hyperedge
};

/// Matches hyperedges to the vertex pairs they contain. Matched pairs form the
/// shadow graph; with the alternating-path classes of the maximum matching, pairs in
/// B2 are red and pairs in B3 and B4 are blue (all red when every hyperedge is
/// matched). Every unmatched or B3/B4-matched hyperedge has all of its pairs blue,
/// so it spans a distinct blue r-clique and |E(H)| <= g_r(shadow).
inline RedBlueDecomposition decompose_red_blue(const Hypergraph& h) {
    const int r = h.uniformity();
    std::vector<Edge> pairs;
    for (const auto& e : h.edges()) {
        for (std::size_t a = 0; a < e.size(); ++a) {
            for (std::size_t b = a + 1; b < e.size(); ++b) pairs.emplace_back(e[a], e[b]);
        }
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    auto pair_id = [&](Vertex u, Vertex v) {
        return static_cast<std::size_t>(std::lower_bound(pairs.begin(), pairs.end(), Edge{u, v}) - pairs.begin());
    };

    std::vector<std::vector<std::size_t>> adj(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) {
        const auto& e = h.edge(i);
        for (std::size_t a = 0; a < e.size(); ++a) {
            for (std::size_t b = a + 1; b < e.size(); ++b) adj[i].push_back(pair_id(e[a], e[b]));
        }
    }
    BipartiteIncidence x(pairs.size(), std::move(adj));
    const Matching m = maximum_matching(x);

    RedBlueDecomposition out;
    out.saturated = m.size() == h.size();
    std::vector<int> right_class(pairs.size(), 2);
    if (!out.saturated) right_class = classify_alternating(x, m).right_class;

    std::vector<std::pair<Edge, std::pair<Color, std::size_t>>> shadow_edges;
    for (std::size_t b = 0; b < pairs.size(); ++b) {
        if (!m.right_to_left[b]) continue;
        const Color c = (out.saturated || right_class[b] == 2) ? Color::red : Color::blue;
        shadow_edges.push_back({pairs[b], {c, *m.right_to_left[b]}});
    }
    std::vector<Edge> edges;
    std::vector<Color> colors;
    for (const auto& [e, info] : shadow_edges) {
        edges.push_back(e);
        colors.push_back(info.first);
        out.origin.push_back(info.second);
    }
    out.shadow = RedBlueGraph(Graph(h.order(), std::move(edges)), std::move(colors));
    out.bound = g_r(out.shadow, r);

    for (std::size_t i = 0; i < out.origin.size(); ++i) {
        auto [u, v] = out.shadow.graph().edges()[i];
        const auto& he = h.edge(out.origin[i]);
        if (!std::binary_search(he.begin(), he.end(), u) || !std::binary_search(he.begin(), he.end(), v)) {
            throw std::logic_error("decompose_red_blue: shadow edge outside its origin hyperedge");
        }
    }
    if (h.size() > out.bound) throw std::logic_error("decompose_red_blue: |E(H)| exceeds g_r(shadow)");
    return out;
}

// ---------------------------------------------------------------------------
// Greedy Berge-tree embedding

struct TreeEmbedding {
    std::optional<BergeCertificate> certificate;
    std::optional<std::vector<std::size_t>> violator; // vertex set with too few incident hyperedges
};

inline bool is_tree(const Graph& t) {
    if (t.order() == 0 || t.size() + 1 != static_cast<std::size_t>(t.order())) return false;
    std::vector<char> seen(static_cast<std::size_t>(t.order()), 0);
    std::vector<Vertex> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        for (Vertex w : t.neighbors(v)) {
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                stack.push_back(w);
            }
        }
    }
    return count == t.order();
}

/// Embeds a tree T on k+1 <= r+1 vertices into H when every vertex set S of H meets
/// at least (Delta(T)-1)|S| hyperedges. Each host vertex gets Delta(T)-1 private
/// hyperedges; tree vertices are placed leaf-first, each edge to a new vertex drawn
/// from the unused private hyperedges of its backward neighbour. When r = k the last
/// vertex may need the swap that moves the parent edge onto the spare private
/// hyperedge. Returns the violator instead when the degree condition fails.
inline TreeEmbedding greedy_berge_tree_embed(const Hypergraph& h, const Graph& t) {
    if (!is_tree(t)) throw DomainError("greedy_berge_tree_embed: pattern is not a tree");
    const int k = t.order() - 1;
    if (k > h.uniformity()) throw DomainError("greedy_berge_tree_embed: tree has more than r+1 vertices");
    TreeEmbedding out;
    if (h.order() == 0) return out;

    if (k == 0) {
        out.certificate = BergeCertificate{{0}, {}};
        return out;
    }
    const std::size_t d = static_cast<std::size_t>(t.max_degree() - 1);
    if (d == 0) {
        if (h.size() == 0) return out;
        out.certificate = BergeCertificate{{h.edge(0)[0], h.edge(0)[1]}, {0}};
        return out;
    }

    std::vector<std::vector<std::size_t>> incidence(static_cast<std::size_t>(h.order()));
    for (Vertex v = 0; v < h.order(); ++v) incidence[v] = h.incident(v);
    auto priv = assign_private_sets(BipartiteIncidence(h.size(), std::move(incidence)), d);
    if (!priv.sets) {
        out.violator = std::move(priv.violator);
        return out;
    }
    const auto& private_sets = *priv.sets;

    Vertex first = -1;
    for (Vertex v = 0; v < t.order(); ++v) {
        if (t.degree(v) == 1) {
            first = v;
            break;
        }
    }
    std::vector<Vertex> order{first};
    std::vector<Vertex> parent(static_cast<std::size_t>(t.order()), -1);
    std::vector<char> seen(static_cast<std::size_t>(t.order()), 0);
    seen[first] = 1;
    for (std::size_t head = 0; head < order.size(); ++head) {
        for (Vertex w : t.neighbors(order[head])) {
            if (!seen[w]) {
                seen[w] = 1;
                parent[w] = order[head];
                order.push_back(w);
            }
        }
    }

    BergeCertificate c;
    c.core_map.assign(static_cast<std::size_t>(t.order()), -1);
    c.edge_map.assign(t.size(), 0);
    std::vector<char> in_image(static_cast<std::size_t>(h.order()), 0);
    std::vector<char> edge_used(h.size(), 0);
    c.core_map[first] = 0;
    in_image[0] = 1;

    for (std::size_t i = 1; i < order.size(); ++i) {
        const Vertex v = order[i];
        const Vertex p = parent[v];
        const std::size_t tree_edge = *t.edge_index(p, v);
        std::optional<std::size_t> spare;
        bool placed = false;
        for (std::size_t he : private_sets[c.core_map[p]]) {
            if (edge_used[he]) continue;
            if (!spare) spare = he;
            for (Vertex x : h.edge(he)) {
                if (!in_image[x]) {
                    c.core_map[v] = x;
                    c.edge_map[tree_edge] = he;
                    in_image[x] = 1;
                    edge_used[he] = 1;
                    placed = true;
                    break;
                }
            }
            if (placed) break;
        }
        if (placed) continue;

        // Every unused private hyperedge of p lies inside the current image: swap.
        const Vertex pp = parent[p];
        if (!spare || pp < 0) throw std::logic_error("greedy_berge_tree_embed: no private hyperedge available");
        const std::size_t parent_edge = *t.edge_index(pp, p);
        const std::size_t moved = c.edge_map[parent_edge];
        Vertex fresh = -1;
        for (Vertex x : h.edge(moved)) {
            if (!in_image[x]) {
                fresh = x;
                break;
            }
        }
        if (fresh < 0) throw std::logic_error("greedy_berge_tree_embed: swap found no fresh vertex");
        c.edge_map[parent_edge] = *spare;
        edge_used[*spare] = 1;
        c.edge_map[tree_edge] = moved;
        c.core_map[v] = fresh;
        in_image[fresh] = 1;
    }
    if (!is_valid_certificate(h, t, c)) throw std::logic_error("greedy_berge_tree_embed: invalid certificate");
    out.certificate = std::move(c);
    return out;
}

} // namespace berge
