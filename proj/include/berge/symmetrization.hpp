#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "berge/constructions.hpp"
#include "berge/core.hpp"
#include "berge/error.hpp"

namespace berge {

/// u's incidence replaced by a coloured copy of v's: u w gets the colour of v w.
inline RedBlueGraph symmetrize_vertex(const RedBlueGraph& g, Vertex u, Vertex v) {
    const Graph& base = g.graph();
    if (u == v || u < 0 || v < 0 || u >= base.order() || v >= base.order()) {
        throw DomainError("symmetrize_vertex: need two distinct vertices");
    }
    if (base.adjacent(u, v)) throw DomainError("symmetrize_vertex: u and v are adjacent");
    std::vector<Edge> edges;
    std::vector<Color> colors;
    for (std::size_t i = 0; i < base.size(); ++i) {
        auto [a, b] = base.edges()[i];
        if (a == u || b == u) continue;
        edges.emplace_back(a, b);
        colors.push_back(g.colors()[i]);
    }
    for (Vertex w : base.neighbors(v)) {
        edges.emplace_back(std::min(u, w), std::max(u, w));
        colors.push_back(g.color(v, w));
    }
    // Graph sorts its edges; carry the colours along.
    std::vector<std::size_t> idx(edges.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return edges[a] < edges[b]; });
    std::vector<Edge> sorted_edges;
    std::vector<Color> sorted_colors;
    for (std::size_t i : idx) {
        sorted_edges.push_back(edges[i]);
        sorted_colors.push_back(colors[i]);
    }
    return RedBlueGraph(Graph(base.order(), std::move(sorted_edges)), std::move(sorted_colors));
}

/// Class index per vertex when g is complete multipartite (non-adjacency is an
/// equivalence relation); classes are numbered by their smallest vertex.
inline std::optional<std::vector<int>> multipartite_classes(const Graph& g) {
    const int n = g.order();
    std::vector<int> cls(static_cast<std::size_t>(n), -1);
    int count = 0;
    for (Vertex v = 0; v < n; ++v) {
        if (cls[v] >= 0) continue;
        cls[v] = count;
        for (Vertex w = v + 1; w < n; ++w) {
            if (!g.adjacent(v, w)) {
                if (cls[w] >= 0) return std::nullopt;
                cls[w] = count;
            }
        }
        ++count;
    }
    for (Vertex a = 0; a < n; ++a) {
        for (Vertex b = a + 1; b < n; ++b) {
            if ((cls[a] == cls[b]) == g.adjacent(a, b)) return std::nullopt;
        }
    }
    return cls;
}

inline int class_count(const std::vector<int>& cls) {
    int c = 0;
    for (int x : cls) c = std::max(c, x + 1);
    return c;
}

/// Colour between every pair of classes, or nullopt when some pair is mixed.
inline std::optional<std::vector<std::vector<Color>>> class_pair_colors(const RedBlueGraph& g,
                                                                       const std::vector<int>& cls) {
    const int c = class_count(cls);
    std::vector<std::vector<std::optional<Color>>> seen(static_cast<std::size_t>(c),
                                                        std::vector<std::optional<Color>>(static_cast<std::size_t>(c)));
    for (std::size_t i = 0; i < g.graph().size(); ++i) {
        auto [u, v] = g.graph().edges()[i];
        auto& slot = seen[cls[u]][cls[v]];
        if (slot && *slot != g.colors()[i]) return std::nullopt;
        slot = g.colors()[i];
        seen[cls[v]][cls[u]] = slot;
    }
    std::vector<std::vector<Color>> out(static_cast<std::size_t>(c), std::vector<Color>(static_cast<std::size_t>(c)));
    for (int a = 0; a < c; ++a) {
        for (int b = 0; b < c; ++b) out[a][b] = seen[a][b].value_or(Color::red);
    }
    return out;
}

namespace detail {

inline RedBlueGraph recolor(const RedBlueGraph& g, const auto& colour_of) {
    std::vector<Color> colors(g.colors());
    for (std::size_t i = 0; i < colors.size(); ++i) {
        auto [u, v] = g.graph().edges()[i];
        colors[i] = colour_of(u, v, colors[i]);
    }
    return RedBlueGraph(g.graph(), std::move(colors));
}

} // namespace detail

/// Edges between class a and any third class C take the colour of the edges between b and C.
inline RedBlueGraph symmetrize_class(const RedBlueGraph& g, int a, int b) {
    const auto cls = multipartite_classes(g.graph());
    if (!cls) throw DomainError("symmetrize_class: graph is not complete multipartite");
    const auto pc = class_pair_colors(g, *cls);
    if (!pc) throw DomainError("symmetrize_class: some pair of classes is not monochromatic");
    const int c = class_count(*cls);
    if (a == b || a < 0 || b < 0 || a >= c || b >= c) throw DomainError("symmetrize_class: need two distinct classes");
    if ((*pc)[a][b] != Color::red) throw DomainError("symmetrize_class: classes are not joined by red edges");
    return detail::recolor(g, [&](Vertex u, Vertex v, Color old) {
        const int cu = (*cls)[u], cv = (*cls)[v];
        if (cu == a && cv != b) return (*pc)[b][cv];
        if (cv == a && cu != b) return (*pc)[b][cu];
        return old;
    });
}

enum class StepKind { vertex_sym, class_sym, recolor };

inline const char* to_string(StepKind k) {
    switch (k) {
    case StepKind::vertex_sym: return "vertexSym";
    case StepKind::class_sym: return "classSym";
    case StepKind::recolor: return "recolor";
    }
    return "?";
}

struct SymmetrizationStep {
    StepKind kind = StepKind::vertex_sym;
    std::string move;          // e.g. "u->v", "y->x,z->x", "class a->b", "class a all red"
    std::vector<int> operands;
    std::uint64_t g_before = 0, g_after = 0;
    std::size_t edges_before = 0, edges_after = 0;
    std::size_t red_before = 0, red_after = 0;
};

struct SymmetrizationTrace {
    std::vector<SymmetrizationStep> steps;
    RedBlueGraph final_graph;
};

/// (g_r, |E|, red edges, d_red(v_0), ..., d_red(v_{n-1})), compared lexicographically.
inline std::vector<std::uint64_t> zykov_objective(const RedBlueGraph& g, int r) {
    std::vector<std::uint64_t> out{g_r(g, r), g.graph().size(), g.red_count()};
    for (int d : g.red_degrees()) out.push_back(static_cast<std::uint64_t>(d));
    return out;
}

namespace detail {

struct Candidate {
    StepKind kind;
    std::string move;
    std::vector<int> operands;
    RedBlueGraph graph;
};

/// Candidate moves in a fixed order: class symmetrizations, class recolourings,
/// vertex symmetrizations, then the two-vertex move
/// y->x, z->x for adjacent y, z both non-adjacent to x.
template <class Visit>
void for_each_move(const RedBlueGraph& g, Visit&& visit) {
    const Graph& base = g.graph();
    const int n = base.order();
    if (const auto cls = multipartite_classes(base)) {
        if (const auto pc = class_pair_colors(g, *cls)) {
            const int c = class_count(*cls);
            for (int a = 0; a < c; ++a) {
                for (int b = 0; b < c; ++b) {
                    if (a != b && (*pc)[a][b] == Color::red) {
                        if (visit(Candidate{StepKind::class_sym, "class " + std::to_string(a) + "->" + std::to_string(b),
                                            {a, b}, symmetrize_class(g, a, b)})) {
                            return;
                        }
                    }
                }
            }
            for (int a = 0; a < c; ++a) {
                auto all_red = recolor(g, [&](Vertex u, Vertex v, Color old) {
                    return ((*cls)[u] == a || (*cls)[v] == a) ? Color::red : old;
                });
                if (visit(Candidate{StepKind::recolor, "class " + std::to_string(a) + " all red", {a}, all_red})) return;
            }
            for (int a = 0; a < c; ++a) {
                for (int b = a + 1; b < c; ++b) {
                    if ((*pc)[a][b] != Color::red) continue;
                    auto blue = recolor(g, [&](Vertex u, Vertex v, Color old) {
                        const int cu = (*cls)[u], cv = (*cls)[v];
                        return ((cu == a && cv == b) || (cu == b && cv == a)) ? Color::blue : old;
                    });
                    if (visit(Candidate{StepKind::recolor,
                                        "classes " + std::to_string(a) + "-" + std::to_string(b) + " blue", {a, b},
                                        blue})) {
                        return;
                    }
                }
            }
        }
    }
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = 0; v < n; ++v) {
            if (u == v || base.adjacent(u, v)) continue;
            if (visit(Candidate{StepKind::vertex_sym, std::to_string(u) + "->" + std::to_string(v), {u, v},
                                symmetrize_vertex(g, u, v)})) {
                return;
            }
        }
    }
    for (auto [y, z] : base.edges()) {
        for (Vertex x = 0; x < n; ++x) {
            if (x == y || x == z || base.adjacent(x, y) || base.adjacent(x, z)) continue;
            auto once = symmetrize_vertex(g, y, x);
            if (visit(Candidate{StepKind::vertex_sym,
                                std::to_string(y) + "->" + std::to_string(x) + "," + std::to_string(z) + "->" +
                                    std::to_string(x),
                                {y, x, z, x}, symmetrize_vertex(once, z, x)})) {
                return;
            }
        }
    }
}

} // namespace detail

/// Greedy local improvement of the objective: the first strictly improving move is
/// applied until none exists. Every step keeps the graph K_k-free.
inline SymmetrizationTrace zykov_run(const RedBlueGraph& g0, int k, int r) {
    if (r < 2 || k < 2) throw DomainError("zykov_run: need k >= 2 and r >= 2");
    const Graph kk = build_pattern({PatternKind::clique, {k}, std::nullopt});
    if (contains_subgraph(g0.graph(), kk)) throw DomainError("zykov_run: start graph contains K_k");
    SymmetrizationTrace trace{{}, g0};
    auto current = zykov_objective(g0, r);
    while (true) {
        std::optional<detail::Candidate> chosen;
        std::vector<std::uint64_t> chosen_obj;
        detail::for_each_move(trace.final_graph, [&](detail::Candidate cand) {
            auto obj = zykov_objective(cand.graph, r);
            if (obj <= current) return false;
            chosen_obj = std::move(obj);
            chosen = std::move(cand);
            return true;
        });
        if (!chosen) return trace;
        if (contains_subgraph(chosen->graph.graph(), kk)) {
            throw std::logic_error("zykov_run: symmetrization created a K_k");
        }
        const RedBlueGraph& before = trace.final_graph;
        trace.steps.push_back({chosen->kind, chosen->move, chosen->operands, current[0], chosen_obj[0],
                               before.graph().size(), chosen->graph.graph().size(), before.red_count(),
                               chosen->graph.red_count()});
        trace.final_graph = std::move(chosen->graph);
        current = std::move(chosen_obj);
    }
}

/// Complete multipartite, every class pair monochromatic, red adjacency between
/// classes transitive, and one colour overall.
struct EndpointReport {
    bool complete_multipartite = false;
    bool class_pairs_monochromatic = false;
    bool red_equivalence = false;
    bool monochromatic = false;
};

inline EndpointReport check_endpoint(const RedBlueGraph& g) {
    EndpointReport rep;
    const std::size_t red = g.red_count();
    rep.monochromatic = red == 0 || red == g.graph().size();
    const auto cls = multipartite_classes(g.graph());
    if (!cls) return rep;
    rep.complete_multipartite = true;
    const auto pc = class_pair_colors(g, *cls);
    if (!pc) return rep;
    rep.class_pairs_monochromatic = true;
    const int c = class_count(*cls);
    rep.red_equivalence = true;
    for (int a = 0; a < c; ++a) {
        for (int b = 0; b < c; ++b) {
            for (int d = 0; d < c; ++d) {
                if (a != b && b != d && a != d && (*pc)[a][b] == Color::red && (*pc)[b][d] == Color::red &&
                    (*pc)[a][d] != Color::red) {
                    rep.red_equivalence = false;
                }
            }
        }
    }
    return rep;
}

} // namespace berge
