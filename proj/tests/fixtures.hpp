#pragma once

#include "derange/instance.hpp"
#include "derange/permutation.hpp"
#include "derange/reduced.hpp"

#include <utility>
#include <vector>

namespace fixtures {

using namespace derange;

// Four vertices, D = (1 2 3 4). The only negative cycle of the reduced matrix
// is (2 4), which is not a usable modification.
inline CostMatrix e4() {
    return CostMatrix(4, {0, 1, 2, 7,
                          1, 0, 3, 8,
                          2, 3, 0, 4,
                          7, 8, 4, 0});
}

inline Derangement e4_d() { return canonical_cycle(4); }

// Hand-built 20-vertex reduced matrix: the walk
// 1 3 7 13 15 19 20 18 14 6 7 carries a negative cycle through 7 that only
// appears after the path from 1 has grown past it. Arcs given 1-based.
inline constexpr int kWalkN = 20;

inline std::vector<std::pair<Arc, Cost>> walk_arcs() {
    const int raw[][3] = {{1, 3, -20}, {3, 7, 5},   {7, 13, -5}, {13, 15, 12}, {15, 19, 1},
                          {19, 20, 3}, {20, 18, -18}, {18, 14, 1}, {14, 6, 1},  {6, 7, 3}};
    std::vector<std::pair<Arc, Cost>> out;
    for (const auto& a : raw) out.push_back({Arc{a[0] - 1, a[1] - 1}, a[2]});
    return out;
}

inline ReducedMatrix walk_matrix() {
    const auto arcs = walk_arcs();
    return ReducedMatrix::from_arcs(kWalkN, arcs);
}

// D(i) = i + 3 (mod 20). None of the walk's arcs is a fixed-point arc under
// it and no two of them induce the same edge.
inline Derangement walk_d() {
    std::vector<Vertex> image(kWalkN);
    for (int i = 0; i < kWalkN; ++i) image[static_cast<std::size_t>(i)] = (i + 3) % kWalkN;
    return Derangement(Permutation(image));
}

// 1-based cycle helper.
inline Cycle c1(std::initializer_list<int> one_based) {
    Cycle c;
    for (const int v : one_based) c.push_back(v - 1);
    return c;
}

} // namespace fixtures
