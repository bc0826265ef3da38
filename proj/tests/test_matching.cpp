#include <gtest/gtest.h>

#include <random>
#include <set>

#include "berge/matching.hpp"
#include "oracles.hpp"

using namespace berge;

namespace {

BipartiteIncidence inc(std::size_t right, std::vector<std::vector<std::size_t>> adj) {
    return BipartiteIncidence(right, std::move(adj));
}

bool is_matching(const BipartiteIncidence& x, const Matching& m) {
    std::set<std::size_t> used;
    for (std::size_t a = 0; a < x.left_size(); ++a) {
        if (!m.left_to_right[a]) continue;
        const std::size_t b = *m.left_to_right[a];
        if (!x.adjacent(a, b) || !used.insert(b).second || m.right_to_left[b] != a) return false;
    }
    return true;
}

// Alternating reachability by exhaustive simple-path search. Side 0 = left, 1 = right.
// A path starts at an unmatched vertex of `start_side`, leaves it by a non-matching edge
// and then alternates matching / non-matching edges.
std::vector<char> reachable(const BipartiteIncidence& x, const Matching& m, int start_side) {
    const std::size_t nl = x.left_size(), nr = x.right_size();
    std::vector<char> reach_left(nl, 0), reach_right(nr, 0);
    std::vector<char> on_left(nl, 0), on_right(nr, 0);
    auto walk = [&](auto&& self, int side, std::size_t v, bool next_matching) -> void {
        if (side == 0) {
            reach_left[v] = 1;
            for (std::size_t b : x.neighbors(v)) {
                const bool is_m = m.left_to_right[v] == b;
                if (is_m != next_matching || on_right[b]) continue;
                on_right[b] = 1;
                self(self, 1, b, !next_matching);
                on_right[b] = 0;
            }
        } else {
            reach_right[v] = 1;
            for (std::size_t a = 0; a < nl; ++a) {
                if (!x.adjacent(a, v)) continue;
                const bool is_m = m.right_to_left[v] == a;
                if (is_m != next_matching || on_left[a]) continue;
                on_left[a] = 1;
                self(self, 0, a, !next_matching);
                on_left[a] = 0;
            }
        }
    };
    if (start_side == 0) {
        for (std::size_t a = 0; a < nl; ++a) {
            if (m.left_to_right[a]) continue;
            on_left[a] = 1;
            walk(walk, 0, a, false);
            on_left[a] = 0;
        }
        return reach_right;
    }
    for (std::size_t b = 0; b < nr; ++b) {
        if (m.right_to_left[b]) continue;
        on_right[b] = 1;
        walk(walk, 1, b, false);
        on_right[b] = 0;
    }
    return reach_left;
}

} // namespace

TEST(Matching, MaximumMatchingExamples) {
    EXPECT_EQ(maximum_matching(inc(1, {{0}})).left_to_right[0], std::optional<std::size_t>(0));
    EXPECT_EQ(maximum_matching(inc(1, {{0}, {0}})).size(), 1u);
    EXPECT_EQ(maximum_matching(inc(3, {{0, 1}, {1, 2}, {2, 0}})).size(), 3u);
}

TEST(Matching, HallViolatorExamples) {
    EXPECT_FALSE(hall_violator(inc(3, {{0, 1, 2}}), 3));
    auto v = hall_violator(inc(1, {{0}, {0}}), 1);
    ASSERT_TRUE(v);
    EXPECT_EQ(v->size(), 2u);
    auto w = hall_violator(inc(2, {{0, 1}, {0, 1}, {0, 1}, {0, 1}}), 1);
    ASSERT_TRUE(w);
    EXPECT_GE(w->size(), 3u);
    EXPECT_THROW(hall_violator(inc(1, {{0}}), 0), DomainError);
}

TEST(Matching, ClassifyExamples) {
    {
        const auto x = inc(2, {{0}, {1}});
        const auto c = classify_alternating(x, maximum_matching(x));
        EXPECT_EQ(c.left_class, (std::vector<int>{4, 4}));
        EXPECT_EQ(c.right_class, (std::vector<int>{4, 4}));
    }
    {
        const auto x = inc(1, {{0}, {0}});
        const auto m = maximum_matching(x);
        const auto c = classify_alternating(x, m);
        const std::size_t matched = m.left_to_right[0] ? 0 : 1;
        EXPECT_EQ(c.left_class[1 - matched], 1);
        EXPECT_EQ(c.left_class[matched], 3);
        EXPECT_EQ(c.right_class[0], 3);
    }
    {
        const auto x = inc(2, {{0, 1}});
        const auto m = maximum_matching(x);
        const auto c = classify_alternating(x, m);
        EXPECT_EQ(c.left_class[0], 2);
        EXPECT_EQ(c.right_class[*m.left_to_right[0]], 2);
        EXPECT_EQ(c.right_class[1 - *m.left_to_right[0]], 1);
    }
}

TEST(Matching, ClassifyRejectsNonMaximum) {
    const auto x = inc(1, {{0}});
    EXPECT_THROW(classify_alternating(x, Matching(1, 1)), std::invalid_argument);
}

TEST(Matching, PrivateSetExamples) {
    auto one = assign_private_sets(inc(2, {{0, 1}}), 2);
    ASSERT_TRUE(one.sets);
    EXPECT_EQ((*one.sets)[0], (std::vector<std::size_t>{0, 1}));
    auto two = assign_private_sets(inc(2, {{0}, {1}}), 1);
    ASSERT_TRUE(two.sets);
    EXPECT_EQ((*two.sets)[0], std::vector<std::size_t>{0});
    EXPECT_EQ((*two.sets)[1], std::vector<std::size_t>{1});
    auto k33 = assign_private_sets(inc(3, {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}}), 1);
    ASSERT_TRUE(k33.sets);
    std::set<std::size_t> all;
    for (const auto& s : *k33.sets) all.insert(s.begin(), s.end());
    EXPECT_EQ(all.size(), 3u);
}

TEST(Matching, MatchingSizeEqualsBruteForce) {
    std::mt19937 rng(7);
    std::uniform_int_distribution<std::size_t> side(0, 6);
    for (int trial = 0; trial < 500; ++trial) {
        const auto x = oracle::random_incidence(rng, side(rng), side(rng), 0.35);
        const auto m = maximum_matching(x);
        ASSERT_TRUE(is_matching(x, m));
        EXPECT_EQ(m.size(), oracle::max_matching(x));
        EXPECT_EQ(m.size(), oracle::min_vertex_cover(x));
    }
}

TEST(Matching, ClassificationAgreesWithPathEnumeration) {
    std::mt19937 rng(13);
    std::uniform_int_distribution<std::size_t> side(1, 6);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto x = oracle::random_incidence(rng, side(rng), side(rng), 0.4);
        const auto m = maximum_matching(x);
        const auto c = classify_alternating(x, m);
        const auto from_b1 = reachable(x, m, 1);
        const auto from_a1 = reachable(x, m, 0);
        for (std::size_t a = 0; a < x.left_size(); ++a) {
            int expect = 4;
            if (!m.left_to_right[a]) {
                expect = 1;
            } else if (from_b1[a]) {
                expect = 2;
            } else if (from_a1[*m.left_to_right[a]]) {
                expect = 3;
            }
            ASSERT_EQ(c.left_class[a], expect);
        }
        for (std::size_t b = 0; b < x.right_size(); ++b) {
            int expect = 4;
            if (!m.right_to_left[b]) {
                expect = 1;
            } else if (from_b1[*m.right_to_left[b]]) {
                expect = 2;
            } else if (from_a1[b]) {
                expect = 3;
            }
            ASSERT_EQ(c.right_class[b], expect);
        }
        // No edge from A1 ∪ A3 ∪ A4 into B1 ∪ B2.
        for (std::size_t a = 0; a < x.left_size(); ++a) {
            for (std::size_t b : x.neighbors(a)) {
                if (c.right_class[b] <= 2) ASSERT_EQ(c.left_class[a], 2);
            }
        }
        EXPECT_EQ(c.left(2).size(), c.right(2).size());
        EXPECT_EQ(c.left(3).size(), c.right(3).size());
    }
}

TEST(Matching, HallViolatorAgreesWithSubsets) {
    std::mt19937 rng(19);
    std::uniform_int_distribution<std::size_t> left(1, 5), right(0, 8), mult(1, 3);
    for (int trial = 0; trial < 400; ++trial) {
        const auto x = oracle::random_incidence(rng, left(rng), right(rng), 0.4);
        const std::size_t d = mult(rng);
        const auto v = hall_violator(x, d);
        ASSERT_EQ(v.has_value(), oracle::hall_violated(x, d));
        if (v) {
            std::uint32_t mask = 0;
            for (std::size_t a : *v) mask |= 1u << a;
            EXPECT_LT(oracle::neighborhood_size(x, mask), d * v->size());
        }
        const auto p = assign_private_sets(x, d);
        EXPECT_NE(p.sets.has_value(), p.violator.has_value());
        if (p.sets) {
            std::set<std::size_t> used;
            for (std::size_t a = 0; a < x.left_size(); ++a) {
                ASSERT_EQ((*p.sets)[a].size(), d);
                for (std::size_t b : (*p.sets)[a]) {
                    EXPECT_TRUE(x.adjacent(a, b));
                    EXPECT_TRUE(used.insert(b).second);
                }
            }
        }
    }
}
