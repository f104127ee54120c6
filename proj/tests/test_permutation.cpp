#include "derange/error.hpp"
#include "derange/permutation.hpp"

#include "fixtures.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>

using namespace derange;
using fixtures::c1;

TEST_CASE("permutation construction") {
    CHECK_NOTHROW(Permutation({1, 2, 0}));
    CHECK_THROWS_AS(Permutation({1, 1, 0}), ParseError);
    CHECK_THROWS_AS(Permutation({1, 2, 3}), ParseError);
    CHECK_THROWS_AS(Permutation(std::vector<Vertex>{}), SizeError);
    const std::vector<int> one_based{2, 3, 1};
    CHECK(Permutation::from_one_based(one_based) == Permutation({1, 2, 0}));
    CHECK(Permutation({1, 2, 0}).one_based() == one_based);
    CHECK(Permutation({1, 2, 0}).inverse() == Permutation({2, 0, 1}));
}

TEST_CASE("cycle decomposition and notation") {
    const auto p = Permutation::from_one_based(std::vector<int>{3, 4, 5, 2, 1, 6});
    const auto cycles = cycle_decomposition(p);
    REQUIRE(cycles.size() == 3);
    CHECK(cycles[0] == c1({1, 3, 5}));
    CHECK(cycles[1] == c1({2, 4}));
    CHECK(cycles[2] == c1({6}));
    CHECK(cycle_notation(p) == "(1 3 5)(2 4)(6)");
    CHECK(Permutation::from_cycles(6, {c1({1, 3, 5}), c1({2, 4})}) == p);
    CHECK_THROWS_AS(Permutation::from_cycles(6, {c1({1, 3}), c1({3, 4})}), DisjointnessError);
}

TEST_CASE("compose_apply is i -> d(s(i))") {
    const Permutation d({1, 2, 3, 0});   // (1 2 3 4)
    const Permutation s({0, 3, 2, 1});   // (2 4)
    const auto ds = compose_apply(d, s);
    for (Vertex i = 0; i < 4; ++i) CHECK(ds(i) == d(s(i)));
    CHECK(cycle_notation(ds) == "(1 2)(3 4)");
}

TEST_CASE("edge-derangement check") {
    CHECK(is_edge_derangement(Permutation({1, 2, 0})).ok());
    const auto fixed = is_edge_derangement(Permutation({0, 2, 1}));
    CHECK(fixed.kind == EdgeDerangementCheck::Kind::fixed_point);
    CHECK(fixed.first == 0);
    const auto two = is_edge_derangement(Permutation({2, 3, 0, 1}));
    CHECK(two.kind == EdgeDerangementCheck::Kind::two_cycle);
    CHECK(two.first == 0);
    CHECK(two.second == 2);
    CHECK(two.describe() == "two_cycle(1,3)");
    CHECK_THROWS_AS(Derangement(Permutation({2, 3, 0, 1})), NotEdgeDerangementError);
    CHECK_THROWS_AS(Derangement(Permutation({0, 2, 1})), NotEdgeDerangementError);
}

TEST_CASE("edge-derangements have n distinct induced edges") {
    // No fixed point and n distinct edges, checked over all permutations of 6.
    std::vector<Vertex> image(6);
    std::iota(image.begin(), image.end(), 0);
    do {
        const Permutation p(image);
        std::vector<std::pair<int, int>> edges;
        bool self = false;
        for (Vertex i = 0; i < 6; ++i) {
            if (p(i) == i) self = true;
            edges.emplace_back(std::min(i, p(i)), std::max(i, p(i)));
        }
        std::sort(edges.begin(), edges.end());
        const bool distinct = std::adjacent_find(edges.begin(), edges.end()) == edges.end();
        CHECK(is_edge_derangement(p).ok() == (!self && distinct));
    } while (std::next_permutation(image.begin(), image.end()));
}

TEST_CASE("permutation cost") {
    const auto m = fixtures::e4();
    CHECK(permutation_cost(canonical_cycle(4).perm(), m) == 15);
    CHECK(permutation_cost(Permutation({2, 3, 1, 0}), m) == 2 + 8 + 3 + 7);
    CHECK_THROWS_AS(permutation_cost(Permutation({0, 2, 3, 1}), m), FixedPointError);
}

TEST_CASE("row form") {
    const Permutation p({2, 0, 3, 1});
    const RowForm r(p);
    for (Vertex i = 0; i < 4; ++i) {
        CHECK(r.forward(i) == p(i));
        CHECK(r.inverse(p(i)) == i);
    }
}

TEST_CASE("initial derangements") {
    CHECK(cycle_notation(canonical_cycle(5).perm()) == "(1 2 3 4 5)");
    // Nearest neighbour on E4: 1 -> 2 -> 3 -> 4 -> 1, cost 1 + 3 + 4 + 7.
    const auto m = fixtures::e4();
    const auto nn = nearest_neighbor_tour(m);
    CHECK(cycle_notation(nn) == "(1 2 3 4)");
    CHECK(permutation_cost(nn, m) == 15);

    for (int n = 3; n <= 30; ++n) {
        const auto r = random_instance(n, 1, 100, static_cast<std::uint64_t>(n));
        const auto g = greedy_two_factor(r);
        CHECK(is_edge_derangement(g.perm()).ok());
        const auto t = nearest_neighbor_tour(r);
        CHECK(cycle_decomposition(t).size() == 1);
    }
}
