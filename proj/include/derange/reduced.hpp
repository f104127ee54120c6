#pragma once

#include "derange/instance.hpp"
#include "derange/permutation.hpp"

#include <span>
#include <string>
#include <vector>

namespace derange {

/// Permutation arc: "s sends `from` to `to`". Under a derangement D it
/// induces the matrix edge [from, D(to)].
struct Arc {
    Vertex from = 0;
    Vertex to = 0;
    bool operator==(const Arc&) const = default;
    auto operator<=>(const Arc&) const = default;
};

/// Arc costs of D^-1 M^-: value(i,j) = M(i, D(j)) - M(i, D(i)).
///
/// A negative cycle here is a cycle s for which Ds is cheaper than D. The arc
/// (i,i) is masked (identity) and so is (i, D^-1(i)), which would make i a
/// fixed point of Ds. Masked arcs carry no value at all; they are never
/// summed.
class ReducedMatrix {
public:
    ReducedMatrix() = default;

    /// Matrix containing exactly the listed arcs (everything else masked).
    /// Used for hand-built fixtures that are not derived from a cost matrix.
    static ReducedMatrix from_arcs(int n, std::span<const std::pair<Arc, Cost>> arcs);

    int size() const { return n_; }
    bool permitted(Vertex i, Vertex j) const { return permitted_[index(i, j)] != 0; }
    bool permitted(Arc a) const { return permitted(a.from, a.to); }

    /// Throws ForbiddenArcError on a masked arc.
    Cost value(Vertex i, Vertex j) const;
    Cost value(Arc a) const { return value(a.from, a.to); }

    /// Unchecked access for hot loops; the caller has tested permitted().
    Cost raw(Vertex i, Vertex j) const { return values_[index(i, j)]; }

    /// Tab-separated dump, 1-based header row/column, "X" for masked arcs.
    std::string dump_tsv() const;

private:
    friend ReducedMatrix build_reduced(const CostMatrix& m, const Derangement& d);

    std::size_t index(Vertex i, Vertex j) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j);
    }

    int n_ = 0;
    std::vector<Cost> values_;
    std::vector<unsigned char> permitted_;
};

ReducedMatrix build_reduced(const CostMatrix& m, const Derangement& d);

/// Sum of arc values; works for open paths and closed cycles alike.
Cost cycle_value(std::span<const Arc> arcs, const ReducedMatrix& r);

/// Arcs (c0,c1), (c1,c2), ..., (ck,c0). A single vertex has no arcs.
std::vector<Arc> cycle_arcs(const Cycle& c);

/// Arcs (i, s(i)) for every point s moves, in increasing i.
std::vector<Arc> permutation_arcs(const Permutation& s);

/// Rotation that starts at the cycle's minimum vertex.
Cycle canonical_rotation(const Cycle& c);

} // namespace derange
