#include "derange/assembly.hpp"
#include "derange/error.hpp"

#include "fixtures.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace derange;
using fixtures::c1;

TEST_CASE("cycle set construction") {
    const CycleSet s(6, {c1({1, 3}), c1({2, 5, 6})});
    CHECK(s.covers(4));
    CHECK_FALSE(s.covers(3));
    CHECK(s.owner(5) == 1);
    CHECK(s.arcs().size() == 5);
    CHECK(cycle_notation(s.product()) == "(1 3)(2 5 6)(4)");
    CHECK_THROWS_AS(CycleSet(6, {c1({1, 3}), c1({3, 5})}), DisjointnessError);
    CHECK_THROWS_AS(CycleSet(6, {c1({1})}), SizeError);
    CHECK_THROWS_AS(CycleSet(6, {c1({1, 7})}), SizeError);
}

TEST_CASE("E4: the only negative cycle is not a usable set") {
    const auto m = fixtures::e4();
    const auto d = fixtures::e4_d();
    const auto r = build_reduced(m, d);
    const CycleSet s(4, {c1({2, 4})});
    const auto v = validate_cycle_set(s, d.rows(), r);
    CHECK(v.value == -5);
    CHECK_FALSE(v.valid);
    CHECK_FALSE(v.certificate_ok);
    // Ds = (1 2)(3 4).
    CHECK(cycle_notation(compose_apply(d, s.product())) == "(1 2)(3 4)");
    const auto two = std::count_if(v.violations.begin(), v.violations.end(),
                                   [](const Violation& x) { return x.kind == Violation::Kind::two_cycle; });
    CHECK(two == 2);
    CHECK_THROWS_AS(apply_cycle_set(s, d), InvalidSetError);
    CHECK_THROWS_AS(validate_cycle_set(CycleSet(4, {c1({1, 4})}), d.rows(), r), ForbiddenArcError);
}

TEST_CASE("SYM arcs whose target lies outside the set") {
    // D = (1 2 3 4 5 6). Every arc of (1 5 3) has a = D(D(b)).
    const auto d = canonical_cycle(6);
    const auto m = random_instance(6, 1, 100, 2);
    const auto r = build_reduced(m, d);
    const CycleSet s(6, {c1({1, 5, 3})});
    CHECK(sym_arcs(s, d.rows()).size() == 3);
    const auto v = validate_cycle_set(s, d.rows(), r);
    const auto outside = std::count_if(v.violations.begin(), v.violations.end(),
                                       [](const Violation& x) { return x.kind == Violation::Kind::sym_outside_set; });
    CHECK(outside == 3);
    CHECK_FALSE(v.conditions_hold);
    CHECK_FALSE(v.valid);
}

TEST_CASE("validation against a direct certificate on random sets") {
    std::mt19937_64 rng(21);
    std::size_t valid = 0, sufficiency_failures = 0, gaps = 0;
    for (int t = 0; t < 3000; ++t) {
        const int n = 5 + t % 5;
        const auto m = random_instance(n, -40, 80, 700 + t);
        const auto d = (t % 2) ? greedy_two_factor(m) : canonical_cycle(n);
        const auto r = build_reduced(m, d);

        std::vector<Vertex> order(n);
        for (Vertex i = 0; i < n; ++i) order[i] = i;
        std::shuffle(order.begin(), order.end(), rng);
        std::vector<Cycle> cycles;
        std::size_t at = 0;
        while (at + 2 <= order.size() && cycles.size() < 3) {
            const std::size_t len = 2 + rng() % std::min<std::size_t>(4, order.size() - at - 1);
            cycles.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(at),
                                order.begin() + static_cast<std::ptrdiff_t>(at + len));
            at += len;
            if (rng() % 2) break;
        }
        const CycleSet s(n, cycles);
        bool permitted = true;
        for (const auto& a : s.arcs()) permitted = permitted && r.permitted(a);
        if (!permitted) continue;

        const auto v = validate_cycle_set(s, d.rows(), r);
        // Oracle: compose by hand and test every point for a fixed point or 2-cycle.
        std::vector<Vertex> ds(n);
        for (Vertex i = 0; i < n; ++i) ds[i] = d(s.product()(i));
        bool ok = true;
        for (Vertex i = 0; i < n; ++i) ok = ok && ds[i] != i && ds[ds[i]] != i;
        CHECK(v.valid == ok);
        CHECK(v.certificate_ok == ok);
        if (ok) {
            ++valid;
            const auto next = apply_cycle_set(s, d);
            CHECK(permutation_cost(next.perm(), m) - permutation_cost(d.perm(), m) == v.value);
        }
        if (v.conditions_hold && !ok) ++sufficiency_failures;
        if (!v.conditions_hold && ok) ++gaps;
    }
    CHECK(valid > 100);
    CHECK(sufficiency_failures == 0);
    MESSAGE("valid sets " << valid << ", necessity gaps " << gaps);
}

TEST_CASE("violation descriptions are 1-based") {
    Violation fp{Violation::Kind::fixed_point, {}, {}, 2, -1};
    CHECK(fp.describe() == "fixed_point(3)");
    Violation two{Violation::Kind::two_cycle, {}, {}, 0, 4};
    CHECK(two.describe() == "two_cycle(1,5)");
    CHECK(std::string(to_string(Violation::Kind::cross_cycle_edge)) == "cross_cycle_edge");
}
