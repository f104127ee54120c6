#pragma once

#include "derange/permutation.hpp"
#include "derange/reduced.hpp"

#include <string>
#include <vector>

namespace derange {

/// Pairwise vertex-disjoint cycles in arc space. Their product s is the
/// modification applied to a derangement D (giving Ds).
class CycleSet {
public:
    CycleSet() = default;
    /// Throws DisjointnessError if two cycles share a vertex and SizeError
    /// for a vertex outside {0..n-1} or a cycle shorter than 2.
    CycleSet(int n, std::vector<Cycle> cycles);

    int size() const { return n_; }
    const std::vector<Cycle>& cycles() const { return cycles_; }
    bool empty() const { return cycles_.empty(); }
    bool covers(Vertex v) const { return owner_[static_cast<std::size_t>(v)] >= 0; }
    /// Index of the cycle containing v, or -1.
    int owner(Vertex v) const { return owner_[static_cast<std::size_t>(v)]; }

    std::vector<Arc> arcs() const;
    Permutation product() const;

private:
    int n_ = 0;
    std::vector<Cycle> cycles_;
    std::vector<int> owner_;
};

Cost cycle_set_value(const CycleSet& s, const ReducedMatrix& r);

/// Arcs (a,b) of S whose induced edge [a, D(b)] is already an edge of D,
/// i.e. a = D(D(b)).
std::vector<Arc> sym_arcs(const CycleSet& s, const RowForm& d);

struct Violation {
    enum class Kind {
        sym_outside_set,    // SYM arc (a,b) with D(b) not covered by S
        within_cycle_edge,  // two arcs of one cycle induce the same edge
        cross_cycle_edge,   // non-SYM arcs of different cycles induce the same edge
        fixed_point,        // certificate: Ds fixes a vertex
        two_cycle,          // certificate: Ds has a 2-cycle
    };
    Kind kind;
    Arc arc{};
    Arc other{};             // second arc for edge collisions
    Vertex u = -1, v = -1;   // offending edge / vertices

    std::string describe() const;
};

const char* to_string(Violation::Kind kind);

struct SetValidation {
    /// Verdict. Equals certificate_ok: the composed permutation itself is the
    /// ground truth.
    bool valid = false;
    /// The sufficient conditions (SYM targets covered, per-cycle and
    /// cross-cycle edge distinctness) all hold.
    bool conditions_hold = false;
    /// compose_apply(D, s) is a derangement of edges.
    bool certificate_ok = false;
    Cost value = 0;
    std::vector<Arc> sym;
    std::vector<Violation> violations;

    /// Conditions and certificate disagree. Conditions passing while the
    /// certificate fails would contradict sufficiency; the reverse measures
    /// how far the conditions are from being necessary.
    bool discrepancy() const { return conditions_hold != certificate_ok; }
};

/// Throws ForbiddenArcError if S uses an arc masked in R and SizeError on a
/// size mismatch.
SetValidation validate_cycle_set(const CycleSet& s, const RowForm& d, const ReducedMatrix& r);

/// Ds as a validated derangement; throws InvalidSetError if Ds is not a
/// derangement of edges.
Derangement apply_cycle_set(const CycleSet& s, const Derangement& d);

} // namespace derange
