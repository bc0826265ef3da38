#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "berge/error.hpp"

namespace berge {

/// Bipartite graph with left part {0..left_size-1} and right part {0..right_size-1}.
/// Neighbour lists are sorted ascending; augmenting searches follow that order.
class BipartiteIncidence {
public:
    BipartiteIncidence() = default;

    BipartiteIncidence(std::size_t right_size, std::vector<std::vector<std::size_t>> adj)
        : right_size_(right_size), adj_(std::move(adj)) {
        for (auto& list : adj_) {
            std::sort(list.begin(), list.end());
            list.erase(std::unique(list.begin(), list.end()), list.end());
            if (!list.empty() && list.back() >= right_size_) {
                throw DomainError("bipartite incidence: right index out of range");
            }
        }
    }

    std::size_t left_size() const { return adj_.size(); }
    std::size_t right_size() const { return right_size_; }
    const std::vector<std::size_t>& neighbors(std::size_t a) const { return adj_[a]; }

    bool adjacent(std::size_t a, std::size_t b) const {
        return std::binary_search(adj_[a].begin(), adj_[a].end(), b);
    }

private:
    std::size_t right_size_ = 0;
    std::vector<std::vector<std::size_t>> adj_;
};

/// Injective partial map left -> right.
struct Matching {
    std::vector<std::optional<std::size_t>> left_to_right;
    std::vector<std::optional<std::size_t>> right_to_left;

    Matching() = default;
    Matching(std::size_t left, std::size_t right) : left_to_right(left), right_to_left(right) {}

    std::size_t size() const {
        return static_cast<std::size_t>(
            std::count_if(left_to_right.begin(), left_to_right.end(), [](const auto& x) { return x.has_value(); }));
    }

    void add(std::size_t a, std::size_t b) {
        left_to_right[a] = b;
        right_to_left[b] = a;
    }
};

/// Vertex classes of the alternating-path decomposition of a maximum matching.
/// Class indices 1..4 are stored in left_class / right_class.
struct AlternatingClassification {
    std::vector<int> left_class;
    std::vector<int> right_class;

    std::vector<std::size_t> left(int cls) const { return members(left_class, cls); }
    std::vector<std::size_t> right(int cls) const { return members(right_class, cls); }

private:
    static std::vector<std::size_t> members(const std::vector<int>& classes, int cls) {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < classes.size(); ++i) {
            if (classes[i] == cls) out.push_back(i);
        }
        return out;
    }
};

namespace detail {

/// Matching in which every left vertex may take up to `capacity` right vertices;
/// equivalent to a matching in the instance where each left vertex is replicated
/// `capacity` times, without materializing the copies.
struct CapacitatedMatching {
    std::vector<std::vector<std::size_t>> assigned; // per left vertex, ascending
    std::vector<std::optional<std::size_t>> owner;  // per right vertex

    bool saturated(std::size_t a, std::size_t capacity) const { return assigned[a].size() == capacity; }
};

inline bool augment_from(const BipartiteIncidence& x, CapacitatedMatching& m, std::size_t a,
                         std::vector<char>& visited) {
    for (std::size_t b : x.neighbors(a)) {
        if (visited[b]) continue;
        if (m.owner[b] == a) continue;
        visited[b] = 1;
        if (!m.owner[b] || augment_from(x, m, *m.owner[b], visited)) {
            if (m.owner[b]) {
                auto& prev = m.assigned[*m.owner[b]];
                prev.erase(std::find(prev.begin(), prev.end(), b));
            }
            m.owner[b] = a;
            auto& mine = m.assigned[a];
            mine.insert(std::upper_bound(mine.begin(), mine.end(), b), b);
            return true;
        }
    }
    return false;
}

inline CapacitatedMatching capacitated_matching(const BipartiteIncidence& x, std::size_t capacity) {
    CapacitatedMatching m;
    m.assigned.assign(x.left_size(), {});
    m.owner.assign(x.right_size(), std::nullopt);
    std::vector<char> visited(x.right_size());
    for (std::size_t a = 0; a < x.left_size(); ++a) {
        while (m.assigned[a].size() < capacity) {
            std::fill(visited.begin(), visited.end(), 0);
            if (!augment_from(x, m, a, visited)) break;
        }
    }
    return m;
}

/// Left vertices reachable from `start` by alternating paths (non-matching edge
/// to the right, then the matching edge back).
inline std::vector<std::size_t> alternating_reach(const BipartiteIncidence& x, const CapacitatedMatching& m,
                                                  std::size_t start) {
    std::vector<char> left_seen(x.left_size(), 0), right_seen(x.right_size(), 0);
    std::vector<std::size_t> queue{start};
    left_seen[start] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::size_t a = queue[head];
        for (std::size_t b : x.neighbors(a)) {
            if (right_seen[b] || m.owner[b] == a) continue;
            right_seen[b] = 1;
            if (m.owner[b] && !left_seen[*m.owner[b]]) {
                left_seen[*m.owner[b]] = 1;
                queue.push_back(*m.owner[b]);
            }
        }
    }
    std::sort(queue.begin(), queue.end());
    return queue;
}

inline std::size_t neighborhood_size(const BipartiteIncidence& x, const std::vector<std::size_t>& s) {
    std::vector<char> seen(x.right_size(), 0);
    std::size_t count = 0;
    for (std::size_t a : s) {
        for (std::size_t b : x.neighbors(a)) {
            if (!seen[b]) {
                seen[b] = 1;
                ++count;
            }
        }
    }
    return count;
}

inline std::vector<std::size_t> violator_from(const BipartiteIncidence& x, const CapacitatedMatching& m,
                                              std::size_t capacity) {
    std::size_t start = 0;
    while (m.saturated(start, capacity)) ++start;
    auto s = alternating_reach(x, m, start);
    // Greedy shrink towards an inclusion-minimal violator.
    for (std::size_t i = 0; i < s.size();) {
        auto candidate = s;
        candidate.erase(candidate.begin() + static_cast<std::ptrdiff_t>(i));
        if (!candidate.empty() && neighborhood_size(x, candidate) < capacity * candidate.size()) {
            s = std::move(candidate);
        } else {
            ++i;
        }
    }
    return s;
}

} // namespace detail

/// Maximum-cardinality matching by augmenting paths, left vertices in index order.
inline Matching maximum_matching(const BipartiteIncidence& x) {
    auto cm = detail::capacitated_matching(x, 1);
    Matching m(x.left_size(), x.right_size());
    for (std::size_t a = 0; a < x.left_size(); ++a) {
        if (!cm.assigned[a].empty()) m.add(a, cm.assigned[a].front());
    }
    return m;
}

/// A left set S with |N(S)| < d|S|, or nullopt when the d-fold Hall condition holds.
inline std::optional<std::vector<std::size_t>> hall_violator(const BipartiteIncidence& x, std::size_t d) {
    if (d < 1) throw DomainError("hall_violator: multiplicity must be at least 1");
    auto cm = detail::capacitated_matching(x, d);
    for (std::size_t a = 0; a < x.left_size(); ++a) {
        if (!cm.saturated(a, d)) return detail::violator_from(x, cm, d);
    }
    return std::nullopt;
}

/// Classes A1..A4 / B1..B4 of a maximum matching:
///   A1/B1 unmatched; A2 matched left vertices alternating-reachable from B1, B2 their
///   partners; B3 matched right vertices alternating-reachable from A1, A3 their
///   partners; A4/B4 everything else.
inline AlternatingClassification classify_alternating(const BipartiteIncidence& x, const Matching& m) {
    const std::size_t nl = x.left_size(), nr = x.right_size();
    if (m.left_to_right.size() != nl || m.right_to_left.size() != nr) {
        throw std::invalid_argument("classify_alternating: matching does not fit the incidence");
    }
    for (std::size_t a = 0; a < nl; ++a) {
        if (!m.left_to_right[a]) continue;
        const std::size_t b = *m.left_to_right[a];
        if (!x.adjacent(a, b) || m.right_to_left[b] != a) {
            throw std::invalid_argument("classify_alternating: not a matching of this incidence");
        }
    }
    if (m.size() != maximum_matching(x).size()) {
        throw std::invalid_argument("classify_alternating: matching is not maximum");
    }

    // Right-side adjacency for walking from B.
    std::vector<std::vector<std::size_t>> radj(nr);
    for (std::size_t a = 0; a < nl; ++a) {
        for (std::size_t b : x.neighbors(a)) radj[b].push_back(a);
    }

    AlternatingClassification c;
    c.left_class.assign(nl, 4);
    c.right_class.assign(nr, 4);

    // From B1: non-matching edge to a matched left vertex, then its matching edge.
    std::vector<char> left_seen(nl, 0), right_seen(nr, 0);
    std::vector<std::size_t> queue;
    for (std::size_t b = 0; b < nr; ++b) {
        if (!m.right_to_left[b]) {
            right_seen[b] = 1;
            queue.push_back(b);
        }
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::size_t b = queue[head];
        for (std::size_t a : radj[b]) {
            if (left_seen[a] || m.right_to_left[b] == a || !m.left_to_right[a]) continue;
            left_seen[a] = 1;
            c.left_class[a] = 2;
            const std::size_t partner = *m.left_to_right[a];
            if (!right_seen[partner]) {
                right_seen[partner] = 1;
                queue.push_back(partner);
            }
        }
    }

    // From A1: non-matching edge to a matched right vertex, then its matching edge.
    std::fill(left_seen.begin(), left_seen.end(), 0);
    std::fill(right_seen.begin(), right_seen.end(), 0);
    queue.clear();
    for (std::size_t a = 0; a < nl; ++a) {
        if (!m.left_to_right[a]) {
            left_seen[a] = 1;
            queue.push_back(a);
        }
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::size_t a = queue[head];
        for (std::size_t b : x.neighbors(a)) {
            if (right_seen[b] || m.left_to_right[a] == b || !m.right_to_left[b]) continue;
            right_seen[b] = 1;
            c.right_class[b] = 3;
            const std::size_t partner = *m.right_to_left[b];
            if (!left_seen[partner]) {
                left_seen[partner] = 1;
                queue.push_back(partner);
            }
        }
    }

    for (std::size_t a = 0; a < nl; ++a) {
        if (!m.left_to_right[a]) {
            c.left_class[a] = 1;
        } else if (c.left_class[a] == 2) {
            c.right_class[*m.left_to_right[a]] = 2;
        }
    }
    for (std::size_t b = 0; b < nr; ++b) {
        if (!m.right_to_left[b]) {
            c.right_class[b] = 1;
        } else if (c.right_class[b] == 3) {
            if (c.left_class[*m.right_to_left[b]] == 2) {
                throw std::logic_error("classify_alternating: A2 and A3 overlap, matching not maximum");
            }
            c.left_class[*m.right_to_left[b]] = 3;
        }
    }
    return c;
}

struct PrivateSetAssignment {
    std::optional<std::vector<std::vector<std::size_t>>> sets; // sets[a] has exactly d elements
    std::optional<std::vector<std::size_t>> violator;
};

/// Pairwise-disjoint d-subsets S_a of N(a) for every left vertex, via a saturating
/// matching in the d-fold replicated instance; otherwise a Hall violator.
inline PrivateSetAssignment assign_private_sets(const BipartiteIncidence& x, std::size_t d) {
    if (d < 1) throw DomainError("assign_private_sets: d must be at least 1");
    auto cm = detail::capacitated_matching(x, d);
    for (std::size_t a = 0; a < x.left_size(); ++a) {
        if (!cm.saturated(a, d)) return {std::nullopt, detail::violator_from(x, cm, d)};
    }
    return {std::move(cm.assigned), std::nullopt};
}

} // namespace berge
