#include "derange/oracle.hpp"

#include "derange/error.hpp"

#include <algorithm>
#include <chrono>
#include <limits>

namespace derange::oracle {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct DerangementSearch {
    const CostMatrix& m;
    int n;
    std::vector<Vertex> image;
    std::vector<bool> used;
    std::vector<Vertex> best;
    Cost best_cost = std::numeric_limits<Cost>::max();
    bool found = false;
    std::uint64_t leaves = 0;

    void go(Vertex i, Cost partial) {
        if (i == n) {
            ++leaves;
            if (!found || partial < best_cost) {
                found = true;
                best_cost = partial;
                best = image;
            }
            return;
        }
        for (Vertex j = 0; j < n; ++j) {
            if (j == i || used[static_cast<std::size_t>(j)]) continue;
            if (j < i && image[static_cast<std::size_t>(j)] == i) continue;  // would close (i j)
            used[static_cast<std::size_t>(j)] = true;
            image[static_cast<std::size_t>(i)] = j;
            go(i + 1, partial + m(i, j));
            used[static_cast<std::size_t>(j)] = false;
        }
        image[static_cast<std::size_t>(i)] = -1;
    }
};

} // namespace

OracleResult brute_min_edge_derangement(const CostMatrix& m) {
    if (m.size() > kMaxDerangementN) {
        throw CapExceededError("derangement oracle is capped at n = " + std::to_string(kMaxDerangementN));
    }
    const auto t0 = Clock::now();
    DerangementSearch s{m, m.size(), std::vector<Vertex>(static_cast<std::size_t>(m.size()), -1),
                        std::vector<bool>(static_cast<std::size_t>(m.size()), false), {}};
    s.go(0, 0);
    // n >= 3 always admits the n-cycle, so an optimum exists.
    return {s.best_cost, Permutation(s.best), s.leaves, ms_since(t0)};
}

OracleResult brute_optimal_tour(const CostMatrix& m) {
    const int n = m.size();
    if (n > kMaxTourN) throw CapExceededError("tour oracle is capped at n = " + std::to_string(kMaxTourN));
    const auto t0 = Clock::now();

    // dp[mask][j]: cheapest path from vertex 0 through `mask` (which holds 0
    // and j) ending at j.
    const std::size_t full = std::size_t{1} << n;
    constexpr Cost kInf = std::numeric_limits<Cost>::max();
    std::vector<Cost> dp(full * static_cast<std::size_t>(n), kInf);
    std::vector<Vertex> parent(full * static_cast<std::size_t>(n), -1);
    auto at = [n](std::size_t mask, Vertex j) { return mask * static_cast<std::size_t>(n) + static_cast<std::size_t>(j); };
    dp[at(1, 0)] = 0;
    std::uint64_t states = 0;
    for (std::size_t mask = 1; mask < full; mask += 2) {
        for (Vertex j = 0; j < n; ++j) {
            const Cost cur = dp[at(mask, j)];
            if (cur == kInf) continue;
            ++states;
            for (Vertex k = 1; k < n; ++k) {
                if (mask & (std::size_t{1} << k)) continue;
                const std::size_t next = mask | (std::size_t{1} << k);
                const Cost cand = cur + m(j, k);
                if (cand < dp[at(next, k)]) {
                    dp[at(next, k)] = cand;
                    parent[at(next, k)] = j;
                }
            }
        }
    }
    Cost best = kInf;
    Vertex last = -1;
    for (Vertex j = 1; j < n; ++j) {
        const Cost v = dp[at(full - 1, j)];
        if (v != kInf && v + m(j, 0) < best) {
            best = v + m(j, 0);
            last = j;
        }
    }
    Cycle order;
    std::size_t mask = full - 1;
    for (Vertex j = last; j != -1;) {
        order.push_back(j);
        const Vertex p = parent[at(mask, j)];
        mask &= ~(std::size_t{1} << j);
        j = p;
    }
    std::reverse(order.begin(), order.end());
    return {best, Permutation::from_cycles(n, {order}), states, ms_since(t0)};
}

std::vector<ValuedCycle> enumerate_negative_cycles(const ReducedMatrix& r, int max_len) {
    const int n = r.size();
    if (n > kMaxTourN && max_len > 6) {
        throw CapExceededError("negative-cycle oracle needs n <= 12 or max_len <= 6");
    }
    std::vector<ValuedCycle> out;
    std::vector<bool> on(static_cast<std::size_t>(n), false);
    Cycle path;

    // Each cycle is generated exactly once, from its minimum vertex.
    auto dfs = [&](auto&& self, Vertex start, Vertex v, Cost value) -> void {
        if (static_cast<int>(path.size()) >= 2 && r.permitted(v, start)) {
            const Cost closed = value + r.raw(v, start);
            if (closed < 0) out.push_back({path, closed});
        }
        if (static_cast<int>(path.size()) >= max_len) return;
        for (Vertex w = start + 1; w < n; ++w) {
            if (on[static_cast<std::size_t>(w)] || !r.permitted(v, w)) continue;
            on[static_cast<std::size_t>(w)] = true;
            path.push_back(w);
            self(self, start, w, value + r.raw(v, w));
            path.pop_back();
            on[static_cast<std::size_t>(w)] = false;
        }
    };
    for (Vertex s = 0; s < n; ++s) {
        on[static_cast<std::size_t>(s)] = true;
        path.assign(1, s);
        dfs(dfs, s, s, 0);
        on[static_cast<std::size_t>(s)] = false;
    }
    std::sort(out.begin(), out.end(), [](const ValuedCycle& a, const ValuedCycle& b) { return a.cycle < b.cycle; });
    return out;
}

} // namespace derange::oracle
