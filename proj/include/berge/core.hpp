#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "berge/error.hpp"

namespace berge {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;
using VertexSet = std::vector<Vertex>;

inline std::uint64_t binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t result = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        result = result * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    }
    return result;
}

/// Simple undirected graph on vertices 0..n-1. Edges are kept as (u, v) with u < v,
/// sorted lexicographically, so edge indices are stable for equal graphs.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : Graph(n, {}) {}

    Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
        if (n < 0) throw DomainError("graph: negative vertex count");
        for (auto& [u, v] : edges_) {
            if (u == v) throw DomainError("graph: loop at vertex " + std::to_string(u));
            if (u > v) std::swap(u, v);
            if (u < 0 || v >= n) {
                throw DomainError("graph: edge (" + std::to_string(u) + "," + std::to_string(v) +
                                  ") out of range for n=" + std::to_string(n));
            }
        }
        std::sort(edges_.begin(), edges_.end());
        if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
            throw DomainError("graph: duplicate edge");
        }
        adj_.assign(static_cast<std::size_t>(n), {});
        matrix_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
        for (auto [u, v] : edges_) {
            adj_[u].push_back(v);
            adj_[v].push_back(u);
            matrix_[index(u, v)] = 1;
            matrix_[index(v, u)] = 1;
        }
        for (auto& list : adj_) std::sort(list.begin(), list.end());
    }

    int order() const { return n_; }
    std::size_t size() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v]; }
    int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }

    bool adjacent(Vertex u, Vertex v) const { return u != v && matrix_[index(u, v)] != 0; }

    int max_degree() const {
        int best = 0;
        for (Vertex v = 0; v < n_; ++v) best = std::max(best, degree(v));
        return best;
    }

    std::optional<std::size_t> edge_index(Vertex u, Vertex v) const {
        if (u > v) std::swap(u, v);
        auto it = std::lower_bound(edges_.begin(), edges_.end(), Edge{u, v});
        if (it == edges_.end() || *it != Edge{u, v}) return std::nullopt;
        return static_cast<std::size_t>(it - edges_.begin());
    }

    Graph with_edge(Vertex u, Vertex v) const {
        auto edges = edges_;
        edges.emplace_back(u, v);
        return Graph(n_, std::move(edges));
    }

    /// Subgraph on the same vertex set keeping the edges whose index satisfies keep.
    template <class Pred>
    Graph filter_edges(Pred keep) const {
        std::vector<Edge> kept;
        for (std::size_t i = 0; i < edges_.size(); ++i) {
            if (keep(i)) kept.push_back(edges_[i]);
        }
        return Graph(n_, std::move(kept));
    }

    Graph relabeled(const std::vector<Vertex>& perm) const {
        std::vector<Edge> mapped;
        mapped.reserve(edges_.size());
        for (auto [u, v] : edges_) mapped.emplace_back(perm[u], perm[v]);
        return Graph(n_, std::move(mapped));
    }

    bool operator==(const Graph& other) const { return n_ == other.n_ && edges_ == other.edges_; }

private:
    std::size_t index(Vertex u, Vertex v) const {
        return static_cast<std::size_t>(u) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(v);
    }

    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<Vertex>> adj_;
    std::vector<std::uint8_t> matrix_;
};

/// r-uniform hypergraph; every hyperedge is a sorted vertex list and the edge list
/// is kept in lexicographic order.
class Hypergraph {
public:
    Hypergraph() = default;

    Hypergraph(int n, int r, std::vector<VertexSet> edges) : n_(n), r_(r), edges_(std::move(edges)) {
        if (n < 0) throw DomainError("hypergraph: negative vertex count");
        if (r < 2) throw DomainError("hypergraph: uniformity must be at least 2");
        for (auto& e : edges_) {
            if (static_cast<int>(e.size()) != r) {
                throw DomainError("hypergraph: hyperedge of size " + std::to_string(e.size()) +
                                  " in a " + std::to_string(r) + "-uniform hypergraph");
            }
            std::sort(e.begin(), e.end());
            if (std::adjacent_find(e.begin(), e.end()) != e.end()) {
                throw DomainError("hypergraph: hyperedge with repeated vertex");
            }
            if (e.front() < 0 || e.back() >= n) throw DomainError("hypergraph: vertex out of range");
        }
        std::sort(edges_.begin(), edges_.end());
        if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
            throw DomainError("hypergraph: duplicate hyperedge");
        }
        incident_.assign(static_cast<std::size_t>(n), {});
        for (std::size_t i = 0; i < edges_.size(); ++i) {
            for (Vertex v : edges_[i]) incident_[v].push_back(i);
        }
    }

    static Hypergraph from_graph(const Graph& g) {
        std::vector<VertexSet> edges;
        edges.reserve(g.size());
        for (auto [u, v] : g.edges()) edges.push_back({u, v});
        return Hypergraph(g.order(), 2, std::move(edges));
    }

    int order() const { return n_; }
    int uniformity() const { return r_; }
    std::size_t size() const { return edges_.size(); }
    const std::vector<VertexSet>& edges() const { return edges_; }
    const VertexSet& edge(std::size_t i) const { return edges_[i]; }
    const std::vector<std::size_t>& incident(Vertex v) const { return incident_[v]; }
    int degree(Vertex v) const { return static_cast<int>(incident_[v].size()); }

    std::optional<std::size_t> index_of(VertexSet e) const {
        std::sort(e.begin(), e.end());
        auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
        if (it == edges_.end() || *it != e) return std::nullopt;
        return static_cast<std::size_t>(it - edges_.begin());
    }

    bool contains(const VertexSet& e) const { return index_of(e).has_value(); }

    Hypergraph with_edge(VertexSet e) const {
        auto edges = edges_;
        edges.push_back(std::move(e));
        return Hypergraph(n_, r_, std::move(edges));
    }

    Hypergraph relabeled(const std::vector<Vertex>& perm) const {
        std::vector<VertexSet> mapped;
        mapped.reserve(edges_.size());
        for (const auto& e : edges_) {
            VertexSet m;
            m.reserve(e.size());
            for (Vertex v : e) m.push_back(perm[v]);
            mapped.push_back(std::move(m));
        }
        return Hypergraph(n_, r_, std::move(mapped));
    }

    bool operator==(const Hypergraph& other) const {
        return n_ == other.n_ && r_ == other.r_ && edges_ == other.edges_;
    }

private:
    int n_ = 0;
    int r_ = 2;
    std::vector<VertexSet> edges_;
    std::vector<std::vector<std::size_t>> incident_;
};

enum class Color : std::uint8_t { red, blue };

inline const char* to_string(Color c) { return c == Color::red ? "red" : "blue"; }

std::uint64_t count_cliques(const Graph& g, int r);

/// Graph with a red/blue colour on every edge; colours are indexed like graph().edges().
class RedBlueGraph {
public:
    RedBlueGraph() = default;

    RedBlueGraph(Graph graph, std::vector<Color> colors) : graph_(std::move(graph)), colors_(std::move(colors)) {
        if (colors_.size() != graph_.size()) throw DomainError("red-blue graph: colour list does not match edges");
    }

    static RedBlueGraph monochromatic(Graph graph, Color c) {
        std::vector<Color> colors(graph.size(), c);
        return RedBlueGraph(std::move(graph), std::move(colors));
    }

    const Graph& graph() const { return graph_; }
    const std::vector<Color>& colors() const { return colors_; }
    int order() const { return graph_.order(); }

    Color color(Vertex u, Vertex v) const {
        auto idx = graph_.edge_index(u, v);
        if (!idx) throw DomainError("red-blue graph: no edge between the given vertices");
        return colors_[*idx];
    }

    Graph subgraph(Color c) const {
        return graph_.filter_edges([&](std::size_t i) { return colors_[i] == c; });
    }
    Graph red_graph() const { return subgraph(Color::red); }
    Graph blue_graph() const { return subgraph(Color::blue); }

    std::size_t red_count() const {
        return static_cast<std::size_t>(std::count(colors_.begin(), colors_.end(), Color::red));
    }

    int red_degree(Vertex v) const {
        int d = 0;
        for (Vertex w : graph_.neighbors(v)) {
            if (colors_[*graph_.edge_index(v, w)] == Color::red) ++d;
        }
        return d;
    }

    std::vector<int> red_degrees() const {
        std::vector<int> out(static_cast<std::size_t>(order()), 0);
        for (std::size_t i = 0; i < colors_.size(); ++i) {
            if (colors_[i] == Color::red) {
                ++out[graph_.edges()[i].first];
                ++out[graph_.edges()[i].second];
            }
        }
        return out;
    }

    /// Red edges at v plus blue r-cliques through v.
    std::uint64_t d_star(Vertex v, int r) const {
        Graph blue = blue_graph();
        const auto& nb = blue.neighbors(v);
        std::vector<Vertex> local(static_cast<std::size_t>(order()), -1);
        for (std::size_t i = 0; i < nb.size(); ++i) local[nb[i]] = static_cast<Vertex>(i);
        std::vector<Edge> inner;
        for (auto [a, b] : blue.edges()) {
            if (local[a] >= 0 && local[b] >= 0) inner.emplace_back(local[a], local[b]);
        }
        Graph link(static_cast<int>(nb.size()), std::move(inner));
        return static_cast<std::uint64_t>(red_degree(v)) + count_cliques(link, r - 1);
    }

    bool operator==(const RedBlueGraph& other) const {
        return graph_ == other.graph_ && colors_ == other.colors_;
    }

private:
    Graph graph_;
    std::vector<Color> colors_;
};

// ---------------------------------------------------------------------------
// Counting

/// Number of r-vertex complete subgraphs. Vertices are processed in degeneracy
/// order and cliques are grown only through later neighbours, so each clique is
/// counted exactly once.
inline std::uint64_t count_cliques(const Graph& g, int r) {
    if (r < 1) throw DomainError("count_cliques: clique size must be at least 1");
    const int n = g.order();
    if (r == 1) return static_cast<std::uint64_t>(n);
    if (r == 2) return g.size();
    if (r > n) return 0;

    std::vector<int> deg(static_cast<std::size_t>(n));
    std::vector<char> removed(static_cast<std::size_t>(n), 0);
    for (Vertex v = 0; v < n; ++v) deg[v] = g.degree(v);
    std::vector<int> pos(static_cast<std::size_t>(n));
    for (int step = 0; step < n; ++step) {
        Vertex best = -1;
        for (Vertex v = 0; v < n; ++v) {
            if (!removed[v] && (best < 0 || deg[v] < deg[best])) best = v;
        }
        removed[best] = 1;
        pos[best] = step;
        for (Vertex w : g.neighbors(best)) {
            if (!removed[w]) --deg[w];
        }
    }

    std::vector<std::vector<Vertex>> forward(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) {
        for (Vertex w : g.neighbors(v)) {
            if (pos[w] > pos[v]) forward[v].push_back(w);
        }
    }

    auto extend = [&](auto&& self, const std::vector<Vertex>& cand, int remaining) -> std::uint64_t {
        if (remaining == 1) return cand.size();
        std::uint64_t total = 0;
        std::vector<Vertex> next;
        for (Vertex w : cand) {
            next.clear();
            for (Vertex x : cand) {
                if (pos[x] > pos[w] && g.adjacent(w, x)) next.push_back(x);
            }
            if (static_cast<int>(next.size()) >= remaining - 1) total += self(self, next, remaining - 1);
        }
        return total;
    };

    std::uint64_t total = 0;
    for (Vertex v = 0; v < n; ++v) {
        if (static_cast<int>(forward[v].size()) >= r - 1) total += extend(extend, forward[v], r - 1);
    }
    return total;
}

/// Red edge count plus the number of r-cliques in the blue subgraph.
inline std::uint64_t g_r(const RedBlueGraph& g, int r) {
    if (r < 2) throw DomainError("g_r: r must be at least 2");
    return g.red_count() + count_cliques(g.blue_graph(), r);
}

// ---------------------------------------------------------------------------
// Subgraph embedding (non-induced)

namespace detail {

/// Max-degree-first BFS order of the pattern; restarts on every component.
inline std::vector<Vertex> pattern_order(const Graph& f) {
    const int n = f.order();
    std::vector<Vertex> order;
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    auto by_degree = [&](Vertex a, Vertex b) {
        return f.degree(a) != f.degree(b) ? f.degree(a) > f.degree(b) : a < b;
    };
    while (static_cast<int>(order.size()) < n) {
        Vertex start = -1;
        for (Vertex v = 0; v < n; ++v) {
            if (!seen[v] && (start < 0 || by_degree(v, start))) start = v;
        }
        seen[start] = 1;
        std::size_t head = order.size();
        order.push_back(start);
        while (head < order.size()) {
            Vertex v = order[head++];
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
    }
    return order;
}

/// Calls visit(map) for each injective edge-preserving map V(f) -> V(g), where
/// map[v] is the image of pattern vertex v; stops early when visit returns false.
template <class Visit>
void for_each_embedding(const Graph& g, const Graph& f, Visit&& visit) {
    const int nf = f.order();
    if (nf > g.order() || f.size() > g.size()) return;
    const auto order = pattern_order(f);
    std::vector<std::vector<Vertex>> back(static_cast<std::size_t>(nf));
    std::vector<int> rank(static_cast<std::size_t>(nf));
    for (int i = 0; i < nf; ++i) rank[order[i]] = i;
    for (Vertex v = 0; v < nf; ++v) {
        for (Vertex w : f.neighbors(v)) {
            if (rank[w] < rank[v]) back[v].push_back(w);
        }
    }
    std::vector<Vertex> map(static_cast<std::size_t>(nf), -1);
    std::vector<char> used(static_cast<std::size_t>(g.order()), 0);
    bool stop = false;

    auto place = [&](auto&& self, int depth) -> void {
        if (depth == nf) {
            if (!visit(static_cast<const std::vector<Vertex>&>(map))) stop = true;
            return;
        }
        const Vertex v = order[depth];
        for (Vertex x = 0; x < g.order() && !stop; ++x) {
            if (used[x] || g.degree(x) < f.degree(v)) continue;
            bool ok = true;
            for (Vertex w : back[v]) {
                if (!g.adjacent(x, map[w])) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            map[v] = x;
            used[x] = 1;
            self(self, depth + 1);
            used[x] = 0;
            map[v] = -1;
        }
    };
    place(place, 0);
}

} // namespace detail

inline std::optional<std::vector<Vertex>> find_subgraph(const Graph& g, const Graph& f) {
    std::optional<std::vector<Vertex>> found;
    detail::for_each_embedding(g, f, [&](const std::vector<Vertex>& map) {
        found = map;
        return false;
    });
    return found;
}

inline bool contains_subgraph(const Graph& g, const Graph& f) { return find_subgraph(g, f).has_value(); }

inline std::uint64_t count_embeddings(const Graph& g, const Graph& f) {
    std::uint64_t count = 0;
    detail::for_each_embedding(g, f, [&](const std::vector<Vertex>&) {
        ++count;
        return true;
    });
    return count;
}

inline std::uint64_t count_automorphisms(const Graph& f) { return count_embeddings(f, f); }

/// Unlabeled copies of h in g: labeled embeddings divided by |Aut(h)|.
inline std::uint64_t count_subgraphs(const Graph& g, const Graph& h) {
    return count_embeddings(g, h) / count_automorphisms(h);
}

// ---------------------------------------------------------------------------
// Text formats

namespace detail {

inline std::vector<std::string> content_lines(std::istream& in) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        lines.push_back(line);
    }
    return lines;
}

inline std::vector<long long> parse_ints(const std::string& line, std::size_t expected, const char* what) {
    std::istringstream ss(line);
    std::vector<long long> out;
    long long x = 0;
    while (ss >> x) out.push_back(x);
    if (!ss.eof() || out.size() != expected) {
        throw DomainError(std::string(what) + ": malformed line '" + line + "'");
    }
    return out;
}

} // namespace detail

/// Graph text format: "n m" then m lines "u v" with u < v.
inline Graph read_graph(std::istream& in) {
    auto lines = detail::content_lines(in);
    if (lines.empty()) throw DomainError("graph file: missing header");
    auto header = detail::parse_ints(lines[0], 2, "graph header");
    if (header[0] < 0 || header[1] < 0) throw DomainError("graph header: negative count");
    const auto m = static_cast<std::size_t>(header[1]);
    if (lines.size() != m + 1) {
        throw DomainError("graph file: expected " + std::to_string(m) + " edge lines, found " +
                          std::to_string(lines.size() - 1));
    }
    std::vector<Edge> edges;
    for (std::size_t i = 1; i <= m; ++i) {
        auto uv = detail::parse_ints(lines[i], 2, "graph edge");
        if (uv[0] >= uv[1]) throw DomainError("graph edge: expected u < v in '" + lines[i] + "'");
        edges.emplace_back(static_cast<Vertex>(uv[0]), static_cast<Vertex>(uv[1]));
    }
    return Graph(static_cast<int>(header[0]), std::move(edges));
}

inline void write_graph(std::ostream& out, const Graph& g) {
    out << g.order() << ' ' << g.size() << '\n';
    for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

/// Hypergraph text format: "n r m" then m lines of r ascending vertex indices.
inline Hypergraph read_hypergraph(std::istream& in) {
    auto lines = detail::content_lines(in);
    if (lines.empty()) throw DomainError("hypergraph file: missing header");
    auto header = detail::parse_ints(lines[0], 3, "hypergraph header");
    if (header[0] < 0 || header[1] < 2 || header[2] < 0) throw DomainError("hypergraph header: invalid counts");
    const auto r = static_cast<std::size_t>(header[1]);
    const auto m = static_cast<std::size_t>(header[2]);
    if (lines.size() != m + 1) {
        throw DomainError("hypergraph file: expected " + std::to_string(m) + " hyperedge lines, found " +
                          std::to_string(lines.size() - 1));
    }
    std::vector<VertexSet> edges;
    for (std::size_t i = 1; i <= m; ++i) {
        auto raw = detail::parse_ints(lines[i], r, "hyperedge");
        VertexSet e(raw.begin(), raw.end());
        if (!std::is_sorted(e.begin(), e.end()) || std::adjacent_find(e.begin(), e.end()) != e.end()) {
            throw DomainError("hyperedge: vertices must be strictly ascending in '" + lines[i] + "'");
        }
        edges.push_back(std::move(e));
    }
    return Hypergraph(static_cast<int>(header[0]), static_cast<int>(r), std::move(edges));
}

inline void write_hypergraph(std::ostream& out, const Hypergraph& h) {
    out << h.order() << ' ' << h.uniformity() << ' ' << h.size() << '\n';
    for (const auto& e : h.edges()) {
        for (std::size_t i = 0; i < e.size(); ++i) out << (i ? " " : "") << e[i];
        out << '\n';
    }
}

/// Red-blue graph text format: "n m" then m lines "u v c" with u < v and c in {R, B}.
inline RedBlueGraph read_red_blue(std::istream& in) {
    auto lines = detail::content_lines(in);
    if (lines.empty()) throw DomainError("red-blue file: missing header");
    auto header = detail::parse_ints(lines[0], 2, "red-blue header");
    if (header[0] < 0 || header[1] < 0) throw DomainError("red-blue header: negative count");
    const auto m = static_cast<std::size_t>(header[1]);
    if (lines.size() != m + 1) {
        throw DomainError("red-blue file: expected " + std::to_string(m) + " edge lines, found " +
                          std::to_string(lines.size() - 1));
    }
    std::vector<std::pair<Edge, Color>> colored;
    for (std::size_t i = 1; i <= m; ++i) {
        std::istringstream ss(lines[i]);
        long long u = 0, v = 0;
        std::string c, rest;
        if (!(ss >> u >> v >> c) || (ss >> rest) || (c != "R" && c != "B")) {
            throw DomainError("red-blue edge: malformed line '" + lines[i] + "'");
        }
        if (u >= v) throw DomainError("red-blue edge: expected u < v in '" + lines[i] + "'");
        colored.push_back({{static_cast<Vertex>(u), static_cast<Vertex>(v)}, c == "R" ? Color::red : Color::blue});
    }
    std::sort(colored.begin(), colored.end());
    std::vector<Edge> edges;
    std::vector<Color> colors;
    for (auto [e, c] : colored) {
        edges.push_back(e);
        colors.push_back(c);
    }
    return RedBlueGraph(Graph(static_cast<int>(header[0]), std::move(edges)), std::move(colors));
}

inline void write_red_blue(std::ostream& out, const RedBlueGraph& g) {
    out << g.order() << ' ' << g.graph().size() << '\n';
    for (std::size_t i = 0; i < g.graph().size(); ++i) {
        auto [u, v] = g.graph().edges()[i];
        out << u << ' ' << v << ' ' << (g.colors()[i] == Color::red ? 'R' : 'B') << '\n';
    }
}

inline std::string to_text(const RedBlueGraph& g) {
    std::ostringstream ss;
    write_red_blue(ss, g);
    return ss.str();
}

inline RedBlueGraph red_blue_from_text(const std::string& text) {
    std::istringstream ss(text);
    return read_red_blue(ss);
}

inline std::string to_text(const Graph& g) {
    std::ostringstream ss;
    write_graph(ss, g);
    return ss.str();
}

inline std::string to_text(const Hypergraph& h) {
    std::ostringstream ss;
    write_hypergraph(ss, h);
    return ss.str();
}

inline Graph graph_from_text(const std::string& text) {
    std::istringstream ss(text);
    return read_graph(ss);
}

inline Hypergraph hypergraph_from_text(const std::string& text) {
    std::istringstream ss(text);
    return read_hypergraph(ss);
}

} // namespace berge
