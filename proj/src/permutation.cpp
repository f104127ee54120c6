#include "derange/permutation.hpp"

#include "derange/error.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <tuple>

namespace derange {

Permutation::Permutation(std::vector<Vertex> image) : image_(std::move(image)) {
    if (image_.empty()) throw SizeError("permutation must act on at least one point");
    std::vector<bool> hit(image_.size(), false);
    for (const Vertex v : image_) {
        if (v < 0 || v >= size() || hit[static_cast<std::size_t>(v)]) {
            throw ParseError("image is not a bijection on {1.." + std::to_string(size()) + "}");
        }
        hit[static_cast<std::size_t>(v)] = true;
    }
}

Permutation Permutation::identity(int n) {
    std::vector<Vertex> image(static_cast<std::size_t>(n));
    std::iota(image.begin(), image.end(), 0);
    return Permutation(std::move(image));
}

Permutation Permutation::from_one_based(std::span<const int> image) {
    std::vector<Vertex> zero(image.begin(), image.end());
    for (auto& v : zero) --v;
    return Permutation(std::move(zero));
}

Permutation Permutation::from_cycles(int n, const std::vector<Cycle>& cycles) {
    std::vector<Vertex> image(static_cast<std::size_t>(n));
    std::iota(image.begin(), image.end(), 0);
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    for (const auto& c : cycles) {
        for (std::size_t k = 0; k < c.size(); ++k) {
            const Vertex v = c[k];
            if (v < 0 || v >= n) throw SizeError("cycle vertex out of range");
            if (used[static_cast<std::size_t>(v)]) throw DisjointnessError("cycles share vertex " + std::to_string(v + 1));
            used[static_cast<std::size_t>(v)] = true;
            image[static_cast<std::size_t>(v)] = c[(k + 1) % c.size()];
        }
    }
    return Permutation(std::move(image));
}

Permutation Permutation::inverse() const {
    std::vector<Vertex> inv(image_.size());
    for (std::size_t i = 0; i < image_.size(); ++i) inv[static_cast<std::size_t>(image_[i])] = static_cast<Vertex>(i);
    return Permutation(std::move(inv));
}

std::vector<int> Permutation::one_based() const {
    std::vector<int> out(image_.begin(), image_.end());
    for (auto& v : out) ++v;
    return out;
}

std::vector<Cycle> cycle_decomposition(const Permutation& p) {
    // Scanning starts in increasing order, so each cycle is discovered from
    // its minimum and the list comes out sorted by it.
    std::vector<Cycle> cycles;
    std::vector<bool> seen(static_cast<std::size_t>(p.size()), false);
    for (Vertex start = 0; start < p.size(); ++start) {
        if (seen[static_cast<std::size_t>(start)]) continue;
        Cycle c;
        for (Vertex v = start; !seen[static_cast<std::size_t>(v)]; v = p(v)) {
            seen[static_cast<std::size_t>(v)] = true;
            c.push_back(v);
        }
        cycles.push_back(std::move(c));
    }
    return cycles;
}

std::string cycle_notation(const Permutation& p) {
    std::ostringstream out;
    for (const auto& c : cycle_decomposition(p)) {
        out << '(';
        for (std::size_t k = 0; k < c.size(); ++k) out << (k ? " " : "") << c[k] + 1;
        out << ')';
    }
    return out.str();
}

Permutation compose_apply(const Permutation& d, const Permutation& s) {
    if (d.size() != s.size()) {
        throw SizeError("cannot compose permutations of sizes " + std::to_string(d.size()) + " and " +
                        std::to_string(s.size()));
    }
    std::vector<Vertex> image(static_cast<std::size_t>(d.size()));
    for (Vertex i = 0; i < d.size(); ++i) image[static_cast<std::size_t>(i)] = d(s(i));
    return Permutation(std::move(image));
}

Cost permutation_cost(const Permutation& p, const CostMatrix& m) {
    if (p.size() != m.size()) throw SizeError("permutation and matrix sizes differ");
    Cost total = 0;
    for (Vertex i = 0; i < p.size(); ++i) {
        if (p(i) == i) throw FixedPointError("permutation fixes vertex " + std::to_string(i + 1));
        total += m(i, p(i));
    }
    return total;
}

std::string EdgeDerangementCheck::describe() const {
    switch (kind) {
    case Kind::valid: return "valid";
    case Kind::fixed_point: return "fixed_point(" + std::to_string(first + 1) + ")";
    case Kind::two_cycle:
        return "two_cycle(" + std::to_string(first + 1) + "," + std::to_string(second + 1) + ")";
    }
    return "?";
}

EdgeDerangementCheck is_edge_derangement(const Permutation& p) {
    for (Vertex i = 0; i < p.size(); ++i) {
        const Vertex j = p(i);
        if (j == i) return {EdgeDerangementCheck::Kind::fixed_point, i, -1};
        if (p(j) == i) return {EdgeDerangementCheck::Kind::two_cycle, std::min(i, j), std::max(i, j)};
    }
    return {};
}

RowForm::RowForm(const Permutation& p) : forward_(p.image()), inverse_(p.inverse().image()) {}

RowForm row_form(const Permutation& p) { return RowForm(p); }

Derangement::Derangement(Permutation p) : perm_(std::move(p)) {
    const auto check = is_edge_derangement(perm_);
    if (!check.ok()) {
        throw NotEdgeDerangementError("not a derangement of edges: " + check.describe() + " in " +
                                      cycle_notation(perm_));
    }
    rows_ = RowForm(perm_);
    cycles_ = cycle_decomposition(perm_);
}

Derangement canonical_cycle(int n) {
    if (n < 3) throw SizeError("a derangement of edges needs n >= 3");
    std::vector<Vertex> image(static_cast<std::size_t>(n));
    for (Vertex i = 0; i < n; ++i) image[static_cast<std::size_t>(i)] = (i + 1) % n;
    return Derangement(Permutation(std::move(image)));
}

Permutation nearest_neighbor_tour(const CostMatrix& m) {
    const int n = m.size();
    std::vector<bool> visited(static_cast<std::size_t>(n), false);
    std::vector<Vertex> order{0};
    visited[0] = true;
    for (int step = 1; step < n; ++step) {
        const Vertex cur = order.back();
        Vertex best = -1;
        for (Vertex v = 0; v < n; ++v) {
            if (visited[static_cast<std::size_t>(v)]) continue;
            if (best < 0 || m(cur, v) < m(cur, best)) best = v;
        }
        visited[static_cast<std::size_t>(best)] = true;
        order.push_back(best);
    }
    return Permutation::from_cycles(n, {order});
}

namespace {

// Walks a fragment (path or cycle) starting at `start` over the undirected
// adjacency lists built by the greedy pass.
Cycle walk(const std::vector<std::vector<Vertex>>& adj, Vertex start) {
    Cycle seq{start};
    Vertex prev = -1;
    Vertex cur = start;
    while (true) {
        Vertex next = -1;
        for (const Vertex w : adj[static_cast<std::size_t>(cur)]) {
            if (w != prev) {
                next = w;
                break;
            }
        }
        if (next < 0 || next == start) break;
        seq.push_back(next);
        prev = cur;
        cur = next;
    }
    return seq;
}

} // namespace

Derangement greedy_two_factor(const CostMatrix& m) {
    const int n = m.size();
    std::vector<std::tuple<Cost, Vertex, Vertex>> edges;
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j) edges.emplace_back(m(i, j), i, j);
    std::sort(edges.begin(), edges.end());

    std::vector<Vertex> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    std::vector<int> comp_size(static_cast<std::size_t>(n), 1);
    auto find = [&](Vertex v) {
        while (parent[static_cast<std::size_t>(v)] != v) {
            parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
            v = parent[static_cast<std::size_t>(v)];
        }
        return v;
    };
    std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(n));
    std::vector<bool> closed(static_cast<std::size_t>(n), false);  // indexed by component root

    for (const auto& [c, i, j] : edges) {
        if (adj[static_cast<std::size_t>(i)].size() >= 2 || adj[static_cast<std::size_t>(j)].size() >= 2) continue;
        const Vertex ri = find(i);
        const Vertex rj = find(j);
        if (ri == rj) {
            if (comp_size[static_cast<std::size_t>(ri)] < 3) continue;
            closed[static_cast<std::size_t>(ri)] = true;
        } else {
            parent[static_cast<std::size_t>(rj)] = ri;
            comp_size[static_cast<std::size_t>(ri)] += comp_size[static_cast<std::size_t>(rj)];
        }
        adj[static_cast<std::size_t>(i)].push_back(j);
        adj[static_cast<std::size_t>(j)].push_back(i);
    }

    std::vector<Cycle> cycles;
    std::vector<Cycle> fragments;
    std::vector<bool> done(static_cast<std::size_t>(n), false);
    for (Vertex v = 0; v < n; ++v) {
        if (done[static_cast<std::size_t>(v)]) continue;
        const Vertex root = find(v);
        Cycle seq;
        if (closed[static_cast<std::size_t>(root)]) {
            seq = walk(adj, v);
            for (const Vertex w : seq) done[static_cast<std::size_t>(w)] = true;
            cycles.push_back(std::move(seq));
        } else {
            // Start a path fragment at one of its ends.
            Vertex end = v;
            Vertex prev = -1;
            while (true) {
                Vertex next = -1;
                for (const Vertex w : adj[static_cast<std::size_t>(end)])
                    if (w != prev) next = w;
                if (next < 0) break;
                prev = end;
                end = next;
            }
            seq = walk(adj, end);
            for (const Vertex w : seq) done[static_cast<std::size_t>(w)] = true;
            fragments.push_back(std::move(seq));
        }
    }

    std::size_t loose = 0;
    for (const auto& f : fragments) loose += f.size();
    if (loose > 0 && loose < 3) {
        // Too few leftovers for a cycle of their own; open the first closed
        // cycle and splice them in.
        fragments.insert(fragments.begin(), cycles.front());
        cycles.erase(cycles.begin());
    }
    if (!fragments.empty()) {
        Cycle merged;
        for (const auto& f : fragments) merged.insert(merged.end(), f.begin(), f.end());
        cycles.push_back(std::move(merged));
    }
    return Derangement(Permutation::from_cycles(n, cycles));
}

} // namespace derange
