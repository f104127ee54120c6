#pragma once

#include "derange/instance.hpp"
#include "derange/permutation.hpp"
#include "derange/reduced.hpp"

#include <cstdint>
#include <vector>

namespace derange::oracle {

inline constexpr int kMaxDerangementN = 9;
inline constexpr int kMaxTourN = 12;

struct OracleResult {
    Cost optimum = 0;
    Permutation witness;
    std::uint64_t search_space = 0;   // complete candidates (or DP states) examined
    double elapsed_ms = 0;
};

/// Exact minimum over all permutations with every cycle of length >= 3,
/// enumerated in lexicographic image order; the first optimum found is the
/// witness. Throws CapExceededError for n > 9.
OracleResult brute_min_edge_derangement(const CostMatrix& m);

/// Held-Karp over subsets. Throws CapExceededError for n > 12.
OracleResult brute_optimal_tour(const CostMatrix& m);

struct ValuedCycle {
    Cycle cycle;   // canonical rotation
    Cost value = 0;
    bool operator==(const ValuedCycle&) const = default;
};

/// Every simple cycle of at most `max_len` arcs over permitted arcs whose
/// value is negative, sorted by cycle. Throws CapExceededError unless n <= 12
/// or max_len <= 6.
std::vector<ValuedCycle> enumerate_negative_cycles(const ReducedMatrix& r, int max_len);

} // namespace derange::oracle
