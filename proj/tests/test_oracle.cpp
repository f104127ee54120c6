#include "derange/error.hpp"
#include "derange/oracle.hpp"

#include "fixtures.hpp"

#include <doctest.h>

#include <algorithm>
#include <limits>
#include <numeric>

using namespace derange;

namespace {

// Plain next_permutation scan over every image, filtered by the definition.
Cost naive_min_edge_derangement(const CostMatrix& m) {
    const int n = m.size();
    std::vector<Vertex> image(n);
    std::iota(image.begin(), image.end(), 0);
    Cost best = std::numeric_limits<Cost>::max();
    do {
        bool ok = true;
        for (Vertex i = 0; i < n && ok; ++i) ok = image[i] != i && image[image[i]] != i;
        if (!ok) continue;
        Cost c = 0;
        for (Vertex i = 0; i < n; ++i) c += m(i, image[i]);
        best = std::min(best, c);
    } while (std::next_permutation(image.begin(), image.end()));
    return best;
}

Cost naive_tour(const CostMatrix& m) {
    const int n = m.size();
    std::vector<Vertex> rest(n - 1);
    std::iota(rest.begin(), rest.end(), 1);
    Cost best = std::numeric_limits<Cost>::max();
    do {
        Cost c = m(0, rest.front()) + m(rest.back(), 0);
        for (std::size_t i = 0; i + 1 < rest.size(); ++i) c += m(rest[i], rest[i + 1]);
        best = std::min(best, c);
    } while (std::next_permutation(rest.begin(), rest.end()));
    return best;
}

// Every ordering of every vertex subset, kept when it starts at its minimum.
std::vector<oracle::ValuedCycle> naive_negative_cycles(const ReducedMatrix& r) {
    const int n = r.size();
    std::vector<oracle::ValuedCycle> out;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        Cycle c;
        for (Vertex v = 0; v < n; ++v)
            if (mask & (1u << v)) c.push_back(v);
        if (c.size() < 2) continue;
        do {
            if (c.front() != *std::min_element(c.begin(), c.end())) continue;
            bool ok = true;
            Cost v = 0;
            for (std::size_t k = 0; k < c.size() && ok; ++k) {
                const Vertex a = c[k], b = c[(k + 1) % c.size()];
                ok = r.permitted(a, b);
                if (ok) v += r.value(a, b);
            }
            if (ok && v < 0) out.push_back({c, v});
        } while (std::next_permutation(c.begin(), c.end()));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.cycle < b.cycle; });
    return out;
}

} // namespace

TEST_CASE("derangement oracle on E4") {
    const auto res = oracle::brute_min_edge_derangement(fixtures::e4());
    CHECK(res.optimum == 15);
    CHECK(permutation_cost(res.witness, fixtures::e4()) == 15);
    // Edge-derangements of 4 points are the six 4-cycles.
    CHECK(res.search_space == 6);
}

TEST_CASE("derangement oracle matches a naive scan") {
    for (int seed = 1; seed <= 30; ++seed) {
        const int n = 3 + seed % 6;
        const auto m = random_instance(n, -30, 90, static_cast<std::uint64_t>(seed));
        const auto res = oracle::brute_min_edge_derangement(m);
        CHECK(res.optimum == naive_min_edge_derangement(m));
        CHECK(is_edge_derangement(res.witness).ok());
        CHECK(permutation_cost(res.witness, m) == res.optimum);
    }
}

TEST_CASE("Held-Karp matches tour enumeration") {
    for (int seed = 1; seed <= 20; ++seed) {
        const int n = 3 + seed % 6;
        const auto m = random_instance(n, 1, 100, static_cast<std::uint64_t>(seed) + 77);
        const auto res = oracle::brute_optimal_tour(m);
        CHECK(res.optimum == naive_tour(m));
        CHECK(cycle_decomposition(res.witness).size() == 1);
        CHECK(permutation_cost(res.witness, m) == res.optimum);
        CHECK(res.optimum >= oracle::brute_min_edge_derangement(m).optimum);
    }
}

TEST_CASE("negative-cycle enumeration matches subset scan") {
    for (int seed = 1; seed <= 25; ++seed) {
        const int n = 4 + seed % 4;
        const auto m = random_instance(n, -20, 60, static_cast<std::uint64_t>(seed) + 300);
        const auto r = build_reduced(m, greedy_two_factor(m));
        CHECK(oracle::enumerate_negative_cycles(r, n) == naive_negative_cycles(r));
        for (const auto& c : oracle::enumerate_negative_cycles(r, 3)) CHECK(c.cycle.size() <= 3);
    }
}

TEST_CASE("oracle caps") {
    const auto m10 = random_instance(10, 1, 9, 1);
    CHECK_THROWS_AS(oracle::brute_min_edge_derangement(m10), CapExceededError);
    const auto m13 = random_instance(13, 1, 9, 1);
    CHECK_THROWS_AS(oracle::brute_optimal_tour(m13), CapExceededError);
    const auto r13 = build_reduced(m13, canonical_cycle(13));
    CHECK_THROWS_AS(oracle::enumerate_negative_cycles(r13, 7), CapExceededError);
    CHECK_NOTHROW(oracle::enumerate_negative_cycles(r13, 3));
}
