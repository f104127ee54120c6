#pragma once

#include "derange/permutation.hpp"
#include "derange/reduced.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <absl/container/flat_hash_map.h>
#include <absl/container/flat_hash_set.h>
#include <vector>

namespace derange {

// ---------------------------------------------------------------------------
// Path matrix
// ---------------------------------------------------------------------------

using PathId = std::int32_t;
inline constexpr PathId kNoPath = -1;

/// One vertex of a path, linked to the path that led to it. Nodes are never
/// mutated once created, so a path read back from any node is exactly the
/// path that was admitted, even if the matrix entry pointing at it has since
/// been replaced.
struct PathNode {
    Vertex vertex = 0;
    Vertex root = 0;
    Cost value = 0;            // sum of arc values from root to vertex
    PathId parent = kNoPath;   // kNoPath for a root
    int length = 0;            // arcs on the path
    int round = 0;             // round in which the node was written
};

struct ArchivedPath {
    Vertex source = 0;
    Vertex target = 0;
    PathId path = kNoPath;
    int replaced_in_round = 0;
};

/// Best-known path per (source, target) pair, with predecessors recoverable
/// for back-tracking. The diagonal is always blank; the source itself is
/// represented by a root node.
class PathMatrix {
public:
    explicit PathMatrix(int n = 0);

    int size() const { return n_; }
    bool blank(Vertex d, Vertex t) const { return entries_[index(d, t)] == kNoPath; }
    PathId entry(Vertex d, Vertex t) const { return entries_[index(d, t)]; }

    /// These throw BlankEntryError on a blank entry.
    Cost value(Vertex d, Vertex t) const;
    Vertex predecessor(Vertex d, Vertex t) const;
    int stamp(Vertex d, Vertex t) const;

    const PathNode& node(PathId id) const { return nodes_[static_cast<std::size_t>(id)]; }
    std::size_t node_count() const { return nodes_.size(); }

    /// Root node for source d, created on first use.
    PathId root(Vertex d);
    PathId root_id(Vertex d) const { return roots_[static_cast<std::size_t>(d)]; }
    PathId extend(PathId parent, Vertex to, Cost arc_value, int round);
    /// Points (d,t) at `id`; the replaced path is archived when `archive` is set.
    void set_entry(Vertex d, Vertex t, PathId id, bool archive, int round);

    const std::vector<ArchivedPath>& archive() const { return archive_; }

    /// Vertices root..node.vertex.
    std::vector<Vertex> vertices(PathId id) const;

    /// Whether v lies on the path ending at node `id`.
    bool on_path(PathId id, Vertex v) const {
        const std::size_t w = static_cast<std::size_t>(id) * words_ + static_cast<std::size_t>(v) / 64;
        return (members_[w] >> (static_cast<unsigned>(v) % 64)) & 1u;
    }

private:
    std::size_t index(Vertex d, Vertex t) const {
        return static_cast<std::size_t>(d) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(t);
    }
    const PathNode& checked(Vertex d, Vertex t) const;

    int n_ = 0;
    std::vector<PathId> entries_;
    std::vector<PathId> roots_;
    std::vector<PathNode> nodes_;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> members_;   // words_ bits-words per node
    std::vector<ArchivedPath> archive_;
};

/// Vertex sequence d..t of entry (d,t). Throws BlankEntryError for a blank
/// entry and InconsistentStateError if the links do not lead back to d
/// within n steps.
std::vector<Vertex> backtrack(const PathMatrix& p, Vertex d, Vertex t);

// ---------------------------------------------------------------------------
// Negative-cycle bookkeeping
// ---------------------------------------------------------------------------

/// Row a lists the values of recorded negative cycles through a, ascending
/// (most negative first). One entry per distinct cycle.
///
/// Stored by value: each distinct value owns a vertex bitset, plus per-vertex
/// counts of further cycles once a second cycle with that value shares a
/// vertex. Recording a cycle costs one hash lookup instead of one per point.
class NegValuesTable {
public:
    explicit NegValuesTable(int n = 0) : n_(n), words_((static_cast<std::size_t>(n) + 63) / 64) {}

    int size() const { return n_; }
    void insert(Vertex row, Cost value);
    void insert_cycle(const Cycle& c, Cost value);
    bool contains(Vertex row, Cost value) const {
        const auto it = slot_.find(value);
        return it != slot_.end() && bit(it->second, row);
    }
    std::vector<Cost> row(Vertex a) const;

private:
    struct Entry {
        Cost value = 0;
        std::vector<std::uint32_t> extra;   // further cycles per vertex, allocated on demand
    };
    std::size_t entry_for(Cost value);
    bool bit(std::size_t e, Vertex v) const {
        return (bits_[e * words_ + static_cast<std::size_t>(v) / 64] >> (static_cast<unsigned>(v) % 64)) & 1u;
    }
    void mark(std::size_t e, Vertex v);

    int n_ = 0;
    std::size_t words_ = 0;
    std::vector<Entry> entries_;
    std::vector<std::uint64_t> bits_;   // words_ per entry
    absl::flat_hash_map<Cost, std::size_t> slot_;
};

enum class ClosureKind {
    independent,  // the path returned to its own source
    extracted,    // cut out of a path that ran into one of its own vertices
};

struct CycleRecord {
    Cycle cycle;          // canonical rotation (minimum vertex first)
    Cost value = 0;
    Vertex root = 0;      // source whose path closed or contained the cycle
    int round = 0;
    ClosureKind kind = ClosureKind::independent;
};

class CyclePool {
public:
    /// False (and no change) if the canonical cycle is already present.
    bool add(CycleRecord record);
    bool contains(const Cycle& canonical) const { return index_.count(canonical) != 0; }
    const std::vector<CycleRecord>& records() const { return records_; }
    std::size_t size() const { return records_.size(); }
    bool empty() const { return records_.empty(); }

private:
    std::vector<CycleRecord> records_;
    absl::flat_hash_set<Cycle> index_;
};

/// Inserts cycle `c` into the pool and its value into NEGVALUES for every
/// point of c. Returns false if the canonical cycle was already recorded.
/// Throws NegativeValueError if the value is not negative and
/// InconsistentStateError if c is not vertex-simple.
bool record_negative_cycle(const Cycle& c, const ReducedMatrix& r, NegValuesTable& nv, CyclePool& pool,
                           Vertex root = -1, int round = 0, ClosureKind kind = ClosureKind::independent);

// ---------------------------------------------------------------------------
// Admissibility of one extension
// ---------------------------------------------------------------------------

enum class RejectReason {
    none,
    sym_edge_conflict,   // new arc induces the same edge as an arc already on Q
    known_cycle_value,   // a is on Q and the closed value is already in NEGVALUES
    revisits_vertex,     // a is on Q (new cycle value)
    fixed_point_arc,     // arc (c', D^-1(c'))
    forbidden_arc,       // identity or otherwise masked arc
};

const char* to_string(RejectReason reason);

struct Admissibility {
    bool admitted = false;
    RejectReason reason = RejectReason::none;
    bool closes_cycle = false;     // admitted arc returns to the source
    bool shortcut_fired = false;   // predecessor of (d, D^-1(c')) is D(a)
    bool revisits = false;         // a lies on Q (and is not the source)
    PathId revisit_at = kNoPath;   // node of a on Q, when located
    Cost revisit_value = 0;        // exact value of the sub-cycle a..c' a
};

/// Decides whether Q' = Q + (c', a) may be retained, Q being the path stored
/// at node `q`. Checks, in order: the arc is permitted; the arc symmetric to
/// (c', a) under D, namely (D(a), D^-1(c')), is not on Q; and a is not on Q
/// unless a is the source (a cycle closure). When a does lie on Q the result
/// carries the exact sub-cycle value and is classified as known_cycle_value
/// if value(Q') - value(d,a) is listed in NEGVALUES row a. With
/// `locate_revisit` off, the node of a on Q is not searched for.
///
/// For a fixed Q only one vertex can start a symmetric conflict: the
/// predecessor on Q of D^-1(c'). Callers that already know it (see
/// sym_predecessor) pass it as `sym_pred` to skip the walk.
inline constexpr Vertex kUnknownPred = -2;
Admissibility check_extension(const PathMatrix& p, PathId q, Vertex a, const ReducedMatrix& r,
                              const NegValuesTable& nv, const RowForm& d, bool locate_revisit = true,
                              Vertex sym_pred = kUnknownPred);

/// Predecessor on Q of D^-1(tip of Q), or -1 if that vertex is not on Q or
/// is its root.
Vertex sym_predecessor(const PathMatrix& p, PathId q, const RowForm& d);

/// Convenience form taking Q as the current entry (d, c').
Admissibility check_extension(const PathMatrix& p, Vertex d, Vertex c_prime, Vertex a, const ReducedMatrix& r,
                              const NegValuesTable& nv, const RowForm& rows);

// ---------------------------------------------------------------------------
// Search
// ---------------------------------------------------------------------------

enum class LabelPolicy {
    automatic,       // all_paths up to exhaustive_up_to vertices, else best_per_pair
    best_per_pair,   // one path per (source, target): the path matrix proper
    all_paths,       // every admissible negative simple path is kept and extended
};

const char* to_string(LabelPolicy p);

struct SearchConfig {
    LabelPolicy labels = LabelPolicy::automatic;
    int exhaustive_up_to = 9;
    int max_rounds = 0;                 // 0 = until a round changes nothing
    bool archive = false;               // keep replaced entries
    std::size_t max_nodes = 20'000'000;
    std::size_t max_cycles = 2'000'000;
    std::size_t max_events = 10'000;    // closure events kept in the trace
    bool extract_revisits = true;       // record new cycles found on revisits
};

struct RoundStats {
    int round = 0;
    std::size_t entries_added = 0;
    std::size_t cycles_closed = 0;
    std::size_t rejections = 0;
    std::size_t columns_changed = 0;    // columns k that received any entry
};

enum class EventKind { independent_closure, revisit };

struct ClosureEvent {
    EventKind kind = EventKind::independent_closure;
    int round = 0;                  // column iteration in which it happened
    Vertex column = 0;              // column k being processed
    Vertex source = 0;
    Cycle cycle;                    // canonical
    Cost value = 0;
    std::size_t source_entries = 0; // entries written from `source` so far
    bool recorded = false;          // added a new cycle to the pool
};

struct SearchTrace {
    std::vector<RoundStats> rounds;
    std::vector<ClosureEvent> events;
    std::size_t events_dropped = 0;
    std::vector<std::size_t> rejections_by_reason = std::vector<std::size_t>(6, 0);
    std::size_t total_entries = 0;
    std::size_t shortcut_fired = 0;
};

struct SearchResult {
    CyclePool pool;
    PathMatrix paths;
    NegValuesTable negvalues;
    SearchTrace trace;
    bool complete = true;
    std::string cap_hit;   // which cap stopped the search, if any
    LabelPolicy labels = LabelPolicy::best_per_pair;   // policy actually used
};

/// Modified Floyd-Warshall search over negative simple paths.
///
/// Every vertex with a negative permitted arc is a source. Round r visits the
/// columns k = 1..n in order; for each source d the entry (d,k) is relaxed
/// from every path ending at some c' that changed since column k was last
/// visited, so a path can advance along increasing labels within one round.
/// Only negative values are retained, a replacement must be strictly better
/// (or equal with a lexicographically smaller vertex sequence), and every
/// extension passes check_extension. A path returning to its source with a
/// negative value is recorded as an independent cycle. Rounds repeat until
/// one changes nothing.
///
/// Under LabelPolicy::all_paths every admitted extension becomes a path of
/// its own instead of competing for (d,k); the entry still shows the best
/// one. Every negative cycle has a rotation whose partial sums are all
/// negative, so this finds every negative cycle whose arcs induce distinct
/// edges. The path count grows exponentially with n.
SearchResult run_search(const ReducedMatrix& r, const RowForm& d, const SearchConfig& config = {});

} // namespace derange
