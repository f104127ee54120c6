#pragma once

#include "derange/assembly.hpp"
#include "derange/fw_engine.hpp"
#include "derange/instance.hpp"
#include "derange/permutation.hpp"

#include <optional>
#include <string>
#include <vector>

namespace derange {

// ---------------------------------------------------------------------------
// Descent to D_FWABS
// ---------------------------------------------------------------------------

struct DescentConfig {
    SearchConfig search;
    /// Apply only the most negative valid cycle per step instead of a greedy
    /// disjoint set.
    bool single_cycle_per_step = false;
    std::size_t max_steps = 1'000'000;
    /// Keep every step's SearchTrace (memory grows with n^2 per step).
    bool keep_search_traces = false;
};

struct SearchSummary {
    std::size_t rounds = 0;
    std::size_t pool_size = 0;
    std::size_t entries = 0;
    bool complete = true;
};

struct DescentStep {
    Derangement derangement;
    Cost cost = 0;
    std::vector<Cycle> applied;   // cycles of the set that produced this step (empty for D0)
    Cost set_value = 0;
    SearchSummary search;         // search run on this step's predecessor
};

enum class Termination { no_valid_negative_set, step_cap };

const char* to_string(Termination t);

struct DescentTrace {
    std::vector<DescentStep> steps;   // steps[0] is D0, steps.back() is D_FWABS
    Termination termination = Termination::no_valid_negative_set;
    bool complete = true;             // no search cap and no step cap was hit
    std::size_t sets_validated = 0;
    std::size_t sufficiency_failures = 0;  // conditions held, certificate failed
    std::size_t necessity_gaps = 0;        // conditions failed, certificate held
    std::vector<SearchTrace> search_traces;
    /// Wall time of each search iteration (reduce, search, assemble, apply),
    /// including the last one that found nothing. Not part of any result file.
    std::vector<double> iteration_ms;

    const DescentStep& final() const { return steps.back(); }
};

/// Repeats build_reduced -> run_search -> assemble -> apply until no
/// negatively-valued valid cycle set can be assembled from the search's
/// cycle pool. Throws NotEdgeDerangementError (via Derangement) for an
/// invalid start and SizeError on a size mismatch.
DescentTrace descend_to_fwabs(const CostMatrix& m, const Derangement& d0, const DescentConfig& config = {});

struct StepChoice {
    std::optional<CycleSet> set;
    Cost value = 0;
    std::size_t validated = 0;
    std::size_t sufficiency_failures = 0;
    std::size_t necessity_gaps = 0;
};

/// Greedy assembly from a pool: cycles in ascending (value, cycle) order are
/// added while they stay vertex-disjoint and the set stays valid; passes
/// repeat until nothing more fits, because a cycle whose SYM target lies
/// outside the set can become admissible once another cycle covers it.
StepChoice choose_cycle_set(const CyclePool& pool, const RowForm& d, const ReducedMatrix& r,
                            bool single_cycle);

// ---------------------------------------------------------------------------
// Exhaustive refinement to D_ABSOLUTE
// ---------------------------------------------------------------------------

struct AbsoluteSearchLimits {
    int max_cycle_len = 9;
    int max_cycles_per_set = 9;
    std::size_t max_candidate_sets = 5'000'000;
    std::size_t max_enumerated_cycles = 2'000'000;
    long time_budget_ms = 20'000;
    /// Throws RangeError unless every limit is positive.
    void validate() const;
};

struct AbsoluteStats {
    std::size_t negative_cycles = 0;
    std::size_t positive_cycles = 0;       // value in [0, -V)
    std::size_t families = 0;              // disjoint negative families (r)
    std::optional<Cost> v;                 // min family value
    std::size_t candidate_sets = 0;
    std::size_t valid_sets = 0;
    std::size_t from_engine = 0;           // negative cycles the engine pool supplied
    std::size_t from_archive = 0;          // cycles closed from archived/live paths
    std::vector<Vertex> determining_vertices;
    double elapsed_ms = 0;
};

struct AbsoluteResult {
    Derangement derangement;
    Cost cost = 0;
    std::vector<Cycle> chosen;   // cycles of sp (empty if D_FWABS was kept)
    Cost chosen_value = 0;
    AbsoluteStats stats;
    bool complete = true;        // no limit stopped an enumeration early
    bool approximate = false;    // cycle length limit below n, or incomplete
    std::string limit_hit;
};

/// Enumerates negative cycles of D_FWABS^-1 M^-, the disjoint families S_i
/// and their minimum value V, then cycles of value in [0, -V), and picks the
/// cheapest valid union of disjoint cycles (containing at least one negative
/// cycle) with negative total. Returns the input unchanged when none exists.
AbsoluteResult search_absolute(const CostMatrix& m, const Derangement& dfw, const AbsoluteSearchLimits& limits = {});

// ---------------------------------------------------------------------------
// Bound chain
// ---------------------------------------------------------------------------

struct BoundLine {
    std::string label;
    Cost lhs = 0;
    Cost rhs = 0;
    bool holds = false;
    bool assertable = true;     // false: reported only, a failure is not a bug
    std::string text() const;   // "lhs ≤ rhs"
};

struct BoundReport {
    std::vector<BoundLine> lines;
    bool ok() const;
};

/// Orders the solver's results against each other and against a tour. Any
/// failing assertable line is a solver bug. Without an oracle the tour line
/// compares d_absolute with a heuristic tour and is report-only. Throws NonTourError if `tour` is not a
/// single n-cycle.
BoundReport bound_chain(const CostMatrix& m, Cost dfw_cost, Cost dabs_cost, const std::optional<Permutation>& tour,
                        std::optional<Cost> oracle_min = std::nullopt, std::optional<Cost> d0_cost = std::nullopt);

} // namespace derange
