#pragma once

#include "derange/instance.hpp"

#include <span>
#include <string>
#include <vector>

namespace derange {

using Cycle = std::vector<Vertex>;

/// A bijection on {0..n-1}; image()[i] is where i goes.
class Permutation {
public:
    Permutation() = default;
    /// Throws SizeError on an empty image and ParseError if `image` is not a
    /// bijection on {0..n-1}.
    explicit Permutation(std::vector<Vertex> image);

    static Permutation identity(int n);
    /// 1-based image array as used in every file format.
    static Permutation from_one_based(std::span<const int> image);
    /// Product of the given disjoint cycles; uncovered points are fixed.
    static Permutation from_cycles(int n, const std::vector<Cycle>& cycles);

    int size() const { return static_cast<int>(image_.size()); }
    Vertex operator()(Vertex i) const { return image_[static_cast<std::size_t>(i)]; }
    const std::vector<Vertex>& image() const { return image_; }

    Permutation inverse() const;
    std::vector<int> one_based() const;

    bool operator==(const Permutation&) const = default;

private:
    std::vector<Vertex> image_;
};

/// Cycles rotated to start at their minimum and sorted by it; fixed points
/// appear as length-1 cycles.
std::vector<Cycle> cycle_decomposition(const Permutation& p);

/// "(1 2 3)(4 5 6)", 1-based; fixed points are written as "(k)".
std::string cycle_notation(const Permutation& p);

/// Returns i -> d(s(i)). No validity claim is made about the result.
Permutation compose_apply(const Permutation& d, const Permutation& s);

/// Sum of M(i, p(i)). Throws FixedPointError when p fixes a point.
Cost permutation_cost(const Permutation& p, const CostMatrix& m);

struct EdgeDerangementCheck {
    enum class Kind { valid, fixed_point, two_cycle };
    Kind kind = Kind::valid;
    Vertex first = -1;   // offending vertex (fixed point or smaller 2-cycle end)
    Vertex second = -1;  // other 2-cycle end

    bool ok() const { return kind == Kind::valid; }
    std::string describe() const;
};

/// Valid iff no fixed point and no 2-cycle; reports the violation at the
/// lowest index.
EdgeDerangementCheck is_edge_derangement(const Permutation& p);

/// Forward and inverse lookup tables for a permutation.
class RowForm {
public:
    RowForm() = default;
    explicit RowForm(const Permutation& p);

    int size() const { return static_cast<int>(forward_.size()); }
    Vertex forward(Vertex a) const { return forward_[static_cast<std::size_t>(a)]; }
    Vertex inverse(Vertex b) const { return inverse_[static_cast<std::size_t>(b)]; }
    const std::vector<Vertex>& forward_row() const { return forward_; }
    const std::vector<Vertex>& inverse_row() const { return inverse_; }

private:
    std::vector<Vertex> forward_;
    std::vector<Vertex> inverse_;
};

RowForm row_form(const Permutation& p);

/// A permutation that is a derangement of edges: every cycle has length >= 3,
/// so its n arcs induce n distinct undirected edges.
class Derangement {
public:
    /// Throws NotEdgeDerangementError with the first violation otherwise.
    explicit Derangement(Permutation p);

    int size() const { return perm_.size(); }
    Vertex operator()(Vertex i) const { return perm_(i); }
    const Permutation& perm() const { return perm_; }
    const RowForm& rows() const { return rows_; }
    const std::vector<Cycle>& cycles() const { return cycles_; }

    bool operator==(const Derangement& o) const { return perm_ == o.perm_; }

private:
    Permutation perm_;
    RowForm rows_;
    std::vector<Cycle> cycles_;
};

inline Permutation compose_apply(const Derangement& d, const Permutation& s) {
    return compose_apply(d.perm(), s);
}

/// The n-cycle (1 2 ... n).
Derangement canonical_cycle(int n);

/// Tour built by always moving to the cheapest unvisited vertex, starting at
/// vertex 1. Ties go to the lower index.
Permutation nearest_neighbor_tour(const CostMatrix& m);

/// Cheapest-edge-first 2-factor: edges are added in (cost, i, j) order while
/// both ends have degree < 2 and no cycle shorter than 3 closes; leftover
/// path fragments are then chained into one extra cycle.
Derangement greedy_two_factor(const CostMatrix& m);

} // namespace derange
