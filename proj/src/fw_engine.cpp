#include "derange/fw_engine.hpp"

#include "derange/error.hpp"

#include <algorithm>

namespace derange {

// ---------------------------------------------------------------------------
// PathMatrix

PathMatrix::PathMatrix(int n)
    : n_(n), entries_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), kNoPath),
      roots_(static_cast<std::size_t>(n), kNoPath), words_((static_cast<std::size_t>(n) + 63) / 64) {}

const PathNode& PathMatrix::checked(Vertex d, Vertex t) const {
    if (d < 0 || t < 0 || d >= n_ || t >= n_ || blank(d, t)) {
        throw BlankEntryError("entry (" + std::to_string(d + 1) + "," + std::to_string(t + 1) + ") is blank");
    }
    return node(entry(d, t));
}

Cost PathMatrix::value(Vertex d, Vertex t) const { return checked(d, t).value; }

Vertex PathMatrix::predecessor(Vertex d, Vertex t) const {
    const auto& n = checked(d, t);
    return node(n.parent).vertex;
}

int PathMatrix::stamp(Vertex d, Vertex t) const { return checked(d, t).round; }

PathId PathMatrix::root(Vertex d) {
    auto& slot = roots_[static_cast<std::size_t>(d)];
    if (slot == kNoPath) {
        slot = static_cast<PathId>(nodes_.size());
        nodes_.push_back({d, d, 0, kNoPath, 0, 0});
        members_.resize(members_.size() + words_, 0);
        members_[static_cast<std::size_t>(slot) * words_ + static_cast<std::size_t>(d) / 64] |=
            std::uint64_t{1} << (static_cast<unsigned>(d) % 64);
    }
    return slot;
}

PathId PathMatrix::extend(PathId parent, Vertex to, Cost arc_value, int round) {
    const PathNode& p = node(parent);
    PathNode n{to, p.root, p.value + arc_value, parent, p.length + 1, round};
    nodes_.push_back(n);
    const std::size_t from = static_cast<std::size_t>(parent) * words_;
    members_.resize(members_.size() + words_);
    const std::size_t at = members_.size() - words_;
    std::copy_n(members_.begin() + static_cast<std::ptrdiff_t>(from), words_, members_.begin() + static_cast<std::ptrdiff_t>(at));
    members_[at + static_cast<std::size_t>(to) / 64] |= std::uint64_t{1} << (static_cast<unsigned>(to) % 64);
    return static_cast<PathId>(nodes_.size() - 1);
}

void PathMatrix::set_entry(Vertex d, Vertex t, PathId id, bool archive, int round) {
    auto& slot = entries_[index(d, t)];
    if (archive && slot != kNoPath) archive_.push_back({d, t, slot, round});
    slot = id;
}

std::vector<Vertex> PathMatrix::vertices(PathId id) const {
    std::vector<Vertex> seq;
    seq.reserve(static_cast<std::size_t>(node(id).length) + 1);
    for (PathId cur = id; cur != kNoPath; cur = node(cur).parent) {
        seq.push_back(node(cur).vertex);
        if (seq.size() > static_cast<std::size_t>(n_) + 1) {
            throw InconsistentStateError("predecessor loop while back-tracking");
        }
    }
    std::reverse(seq.begin(), seq.end());
    return seq;
}

std::vector<Vertex> backtrack(const PathMatrix& p, Vertex d, Vertex t) {
    if (d < 0 || t < 0 || d >= p.size() || t >= p.size() || p.blank(d, t)) {
        throw BlankEntryError("entry (" + std::to_string(d + 1) + "," + std::to_string(t + 1) + ") is blank");
    }
    auto seq = p.vertices(p.entry(d, t));
    if (seq.front() != d || seq.back() != t) throw InconsistentStateError("path does not span its entry");
    return seq;
}

// ---------------------------------------------------------------------------
// NEGVALUES and the cycle pool

std::size_t NegValuesTable::entry_for(Cost value) {
    const auto [it, fresh] = slot_.try_emplace(value, entries_.size());
    if (fresh) {
        entries_.push_back({value, {}});
        bits_.resize(bits_.size() + words_, 0);
    }
    return it->second;
}

void NegValuesTable::mark(std::size_t e, Vertex v) {
    if (!bit(e, v)) {
        bits_[e * words_ + static_cast<std::size_t>(v) / 64] |= std::uint64_t{1} << (static_cast<unsigned>(v) % 64);
        return;
    }
    auto& extra = entries_[e].extra;
    if (extra.empty()) extra.assign(static_cast<std::size_t>(n_), 0);
    ++extra[static_cast<std::size_t>(v)];
}

void NegValuesTable::insert(Vertex row, Cost value) { mark(entry_for(value), row); }

void NegValuesTable::insert_cycle(const Cycle& c, Cost value) {
    const std::size_t e = entry_for(value);
    for (const Vertex v : c) mark(e, v);
}

std::vector<Cost> NegValuesTable::row(Vertex a) const {
    std::vector<Cost> out;
    for (std::size_t e = 0; e < entries_.size(); ++e) {
        if (!bit(e, a)) continue;
        const auto& extra = entries_[e].extra;
        const std::size_t copies = 1 + (extra.empty() ? 0 : extra[static_cast<std::size_t>(a)]);
        out.insert(out.end(), copies, entries_[e].value);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool CyclePool::add(CycleRecord record) {
    if (!index_.insert(record.cycle).second) return false;
    records_.push_back(std::move(record));
    return true;
}

bool record_negative_cycle(const Cycle& c, const ReducedMatrix& r, NegValuesTable& nv, CyclePool& pool,
                           Vertex root, int round, ClosureKind kind) {
    if (c.size() < 2) throw InconsistentStateError("a cycle needs at least two vertices");
    Cycle canonical = canonical_rotation(c);
    if (pool.contains(canonical)) return false;
    std::vector<char> seen(static_cast<std::size_t>(r.size()), 0);
    Cost value = 0;
    for (std::size_t k = 0; k < c.size(); ++k) {
        auto& s = seen[static_cast<std::size_t>(c[k])];
        if (s) throw InconsistentStateError("cycle repeats a vertex");
        s = 1;
        value += r.value(c[k], c[(k + 1) % c.size()]);
    }
    if (value >= 0) throw NegativeValueError("cycle value " + std::to_string(value) + " is not negative");

    nv.insert_cycle(canonical, value);
    const Vertex lowest = canonical.front();
    pool.add({std::move(canonical), value, root < 0 ? lowest : root, round, kind});
    return true;
}

// ---------------------------------------------------------------------------
// Admissibility

const char* to_string(RejectReason reason) {
    switch (reason) {
    case RejectReason::none: return "none";
    case RejectReason::sym_edge_conflict: return "sym_edge_conflict";
    case RejectReason::known_cycle_value: return "known_cycle_value";
    case RejectReason::revisits_vertex: return "revisits_vertex";
    case RejectReason::fixed_point_arc: return "fixed_point_arc";
    case RejectReason::forbidden_arc: return "forbidden_arc";
    }
    return "?";
}

Vertex sym_predecessor(const PathMatrix& p, PathId q, const RowForm& d) {
    const Vertex target = d.inverse(p.node(q).vertex);
    if (!p.on_path(q, target)) return -1;
    for (PathId cur = q; cur != kNoPath; cur = p.node(cur).parent) {
        const PathNode& n = p.node(cur);
        if (n.vertex == target) return n.parent == kNoPath ? -1 : p.node(n.parent).vertex;
    }
    return -1;
}

Admissibility check_extension(const PathMatrix& p, PathId q, Vertex a, const ReducedMatrix& r,
                              const NegValuesTable& nv, const RowForm& rows, bool locate_revisit, Vertex sym_pred) {
    if (q < 0 || static_cast<std::size_t>(q) >= p.node_count()) {
        throw InconsistentStateError("path handle does not exist");
    }
    Admissibility out;
    const PathNode& tip = p.node(q);
    const Vertex c = tip.vertex;
    const Vertex d = tip.root;

    if (a == c || !r.permitted(c, a)) {
        out.reason = (a != c && a == rows.inverse(c)) ? RejectReason::fixed_point_arc : RejectReason::forbidden_arc;
        return out;
    }

    // (c', a) induces edge [c', D(a)]; the only other arc inducing it is
    // (D(a), D^-1(c')).
    const Vertex sym_from = rows.forward(a);
    const Vertex sym_to = rows.inverse(c);
    if (sym_to != d && !p.blank(d, sym_to) && p.predecessor(d, sym_to) == sym_from) out.shortcut_fired = true;

    // Bitset pre-filters: a conflict needs both ends of the symmetric arc on
    // Q, a revisit needs a on Q. Only then is Q walked.
    bool conflict = false;
    bool may_conflict = p.on_path(q, sym_to) && p.on_path(q, sym_from);
    if (may_conflict && sym_pred != kUnknownPred) {
        conflict = sym_pred == sym_from;
        may_conflict = false;
    }
    const bool revisits = a != d && p.on_path(q, a);
    PathId on_path = kNoPath;
    bool find_sym = may_conflict;
    bool find_a = revisits && locate_revisit;
    // Each vertex occurs once on a simple path, so the walk stops as soon as
    // everything it looks for has been seen.
    for (PathId cur = q; cur != kNoPath && (find_sym || find_a); cur = p.node(cur).parent) {
        const PathNode& n = p.node(cur);
        if (find_a && n.vertex == a) {
            on_path = cur;
            find_a = false;
        }
        if (find_sym && n.vertex == sym_to) {
            conflict = n.parent != kNoPath && p.node(n.parent).vertex == sym_from;
            find_sym = false;
            if (conflict) break;
        }
    }
    if (conflict) {
        out.reason = RejectReason::sym_edge_conflict;
        return out;
    }
    const Cost extended = tip.value + r.raw(c, a);
    if (a == d) {
        out.admitted = true;
        out.closes_cycle = true;
        return out;
    }
    if (!revisits) {
        out.admitted = true;
        return out;
    }
    out.revisits = true;
    out.reason = nv.contains(a, extended - p.value(d, a)) ? RejectReason::known_cycle_value
                                                           : RejectReason::revisits_vertex;
    if (on_path == kNoPath) return out;
    out.revisit_at = on_path;
    out.revisit_value = extended - p.node(on_path).value;
    return out;
}

Admissibility check_extension(const PathMatrix& p, Vertex d, Vertex c_prime, Vertex a, const ReducedMatrix& r,
                              const NegValuesTable& nv, const RowForm& rows) {
    if (c_prime == d) {
        if (p.root_id(d) == kNoPath) throw InconsistentStateError("source " + std::to_string(d + 1) + " has no root");
        return check_extension(p, p.root_id(d), a, r, nv, rows);
    }
    if (p.blank(d, c_prime)) throw InconsistentStateError("Q cannot be reconstructed: entry is blank");
    return check_extension(p, p.entry(d, c_prime), a, r, nv, rows);
}

// ---------------------------------------------------------------------------
// Search

const char* to_string(LabelPolicy p) {
    switch (p) {
    case LabelPolicy::automatic: return "automatic";
    case LabelPolicy::best_per_pair: return "best_per_pair";
    case LabelPolicy::all_paths: return "all_paths";
    }
    return "?";
}

namespace {

struct Candidate {
    Cost value;
    PathId from;
};

class Search {
public:
    Search(const ReducedMatrix& r, const RowForm& rows, const SearchConfig& cfg)
        : r_(r), rows_(rows), cfg_(cfg), n_(r.size()) {
        all_paths_ = cfg.labels == LabelPolicy::all_paths ||
                     (cfg.labels == LabelPolicy::automatic && n_ <= cfg.exhaustive_up_to);
        out_.labels = all_paths_ ? LabelPolicy::all_paths : LabelPolicy::best_per_pair;
        out_.paths = PathMatrix(n_);
        out_.negvalues = NegValuesTable(n_);
        log_.resize(static_cast<std::size_t>(n_));
        mark_.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_), 0);
        entries_from_.assign(static_cast<std::size_t>(n_), 0);
        for (Vertex d = 0; d < n_; ++d) {
            for (Vertex j = 0; j < n_; ++j) {
                if (r_.permitted(d, j) && r_.raw(d, j) < 0) {
                    sources_.push_back(d);
                    log_[static_cast<std::size_t>(d)].push_back(out_.paths.root(d));
                    sym_pred_.push_back(-1);
                    break;
                }
            }
        }
    }

    SearchResult run() {
        for (int round = 1;; ++round) {
            if (cfg_.max_rounds > 0 && round > cfg_.max_rounds) {
                stop("max_rounds");
                break;
            }
            RoundStats stats;
            stats.round = round;
            for (Vertex k = 0; k < n_ && out_.complete; ++k) {
                const std::size_t before = stats.entries_added;
                for (const Vertex d : sources_) {
                    if (!out_.complete) break;
                    if (k == d)
                        close_cycles(d, round, stats);
                    else
                        relax(d, k, round, stats);
                }
                if (stats.entries_added > before) ++stats.columns_changed;
            }
            out_.trace.rounds.push_back(stats);
            if (!out_.complete || (stats.entries_added == 0 && stats.cycles_closed == 0)) break;
        }
        return std::move(out_);
    }

private:
    void stop(const char* why) {
        out_.complete = false;
        if (out_.cap_hit.empty()) out_.cap_hit = why;
    }

    // Slice of source d's entry log not yet offered to column k.
    std::pair<std::size_t, std::size_t> pending(Vertex d, Vertex k) {
        auto& m = mark_[static_cast<std::size_t>(d) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(k)];
        const std::size_t begin = m;
        const std::size_t end = log_[static_cast<std::size_t>(d)].size();
        m = end;
        return {begin, end};
    }

    bool live(Vertex d, PathId id) const {
        if (all_paths_) return true;
        const auto& node = out_.paths.node(id);
        return node.parent == kNoPath || out_.paths.entry(d, node.vertex) == id;
    }

    void reject(const Admissibility& adm, RoundStats& stats) {
        ++stats.rejections;
        ++out_.trace.rejections_by_reason[static_cast<std::size_t>(adm.reason)];
    }

    void note_event(ClosureEvent ev) {
        if (out_.trace.events.size() < cfg_.max_events)
            out_.trace.events.push_back(std::move(ev));
        else
            ++out_.trace.events_dropped;
    }

    bool record(const Cycle& c, Vertex root, int round, ClosureKind kind) {
        if (out_.pool.size() >= cfg_.max_cycles) {
            stop("max_cycles");
            return false;
        }
        return record_negative_cycle(c, r_, out_.negvalues, out_.pool, root, round, kind);
    }

    void close_cycles(Vertex d, int round, RoundStats& stats) {
        const auto [begin, end] = pending(d, d);
        const auto& log = log_[static_cast<std::size_t>(d)];
        for (std::size_t i = begin; i < end; ++i) {
            const PathId q = log[i];
            if (!live(d, q)) continue;
            const auto& tip = out_.paths.node(q);
            if (!r_.permitted(tip.vertex, d) || tip.value + r_.raw(tip.vertex, d) >= 0) continue;
            const auto adm = check_extension(out_.paths, q, d, r_, out_.negvalues, rows_, true,
                                             sym_pred_[static_cast<std::size_t>(q)]);
            if (adm.shortcut_fired) ++out_.trace.shortcut_fired;
            if (!adm.admitted) {
                reject(adm, stats);
                continue;
            }
            const Cycle cycle = out_.paths.vertices(q);
            const bool added = record(cycle, d, round, ClosureKind::independent);
            if (added) ++stats.cycles_closed;
            note_event({EventKind::independent_closure, round, d, d, canonical_rotation(cycle),
                        tip.value + r_.raw(tip.vertex, d), entries_from_[static_cast<std::size_t>(d)], added});
            if (!out_.complete) return;
        }
    }

    std::vector<Vertex> extended_path(PathId from, Vertex k) const {
        auto seq = out_.paths.vertices(from);
        seq.push_back(k);
        return seq;
    }

    void relax(Vertex d, Vertex k, int round, RoundStats& stats) {
        if (all_paths_) {
            relax_all(d, k, round, stats);
            return;
        }
        const auto [begin, end] = pending(d, k);
        if (begin == end) return;
        const auto& log = log_[static_cast<std::size_t>(d)];
        const PathId current = out_.paths.entry(d, k);
        const bool has_current = current != kNoPath;
        const Cost current_value = has_current ? out_.paths.node(current).value : 0;

        candidates_.clear();
        for (std::size_t i = begin; i < end; ++i) {
            const PathId q = log[i];
            if (!live(d, q)) continue;
            const auto& tip = out_.paths.node(q);
            if (!r_.permitted(tip.vertex, k)) continue;
            const Cost v = tip.value + r_.raw(tip.vertex, k);
            if (v >= 0) continue;
            if (has_current && v > current_value) continue;
            candidates_.push_back({v, q});
        }
        if (candidates_.empty()) return;
        std::stable_sort(candidates_.begin(), candidates_.end(),
                         [](const Candidate& a, const Candidate& b) { return a.value < b.value; });

        PathId best_from = kNoPath;
        Cost best_value = 0;
        std::vector<Vertex> best_seq;
        for (const auto& cand : candidates_) {
            if (best_from != kNoPath && cand.value > best_value) break;
            // Equal values are decided by the lexicographically smaller sequence.
            const bool tie = best_from != kNoPath || (has_current && cand.value == current_value);
            std::vector<Vertex> seq;
            if (tie) {
                seq = extended_path(cand.from, k);
                if (best_from != kNoPath) {
                    if (best_seq.empty()) best_seq = extended_path(best_from, k);
                    if (!(seq < best_seq)) continue;
                } else if (!(seq < out_.paths.vertices(current))) {
                    continue;
                }
            }
            const auto adm = check_extension(out_.paths, cand.from, k, r_, out_.negvalues, rows_, false,
                                             sym_pred_[static_cast<std::size_t>(cand.from)]);
            if (adm.shortcut_fired) ++out_.trace.shortcut_fired;
            if (!adm.admitted) {
                reject(adm, stats);
                if (adm.revisits) on_revisit(d, k, cand.from, adm, round);
                if (!out_.complete) return;
                continue;
            }
            best_from = cand.from;
            best_value = cand.value;
            best_seq = std::move(seq);
        }
        if (best_from == kNoPath) return;

        const PathId id = add_path(d, best_from, k, round, stats);
        if (id != kNoPath) out_.paths.set_entry(d, k, id, cfg_.archive, round);
    }

    // Every admissible extension into column k is kept.
    void relax_all(Vertex d, Vertex k, int round, RoundStats& stats) {
        const auto [begin, end] = pending(d, k);
        for (std::size_t i = begin; i < end; ++i) {
            const PathId q = log_[static_cast<std::size_t>(d)][i];
            const auto& tip = out_.paths.node(q);
            if (tip.vertex == k || !r_.permitted(tip.vertex, k)) continue;
            const Cost v = tip.value + r_.raw(tip.vertex, k);
            if (v >= 0) continue;
            const auto adm = check_extension(out_.paths, q, k, r_, out_.negvalues, rows_, false,
                                             sym_pred_[static_cast<std::size_t>(q)]);
            if (!adm.admitted) {
                reject(adm, stats);
                if (adm.revisits) on_revisit(d, k, q, adm, round);
                if (!out_.complete) return;
                continue;
            }
            const PathId id = add_path(d, q, k, round, stats);
            if (id == kNoPath) return;
            const PathId current = out_.paths.entry(d, k);
            if (current == kNoPath || v < out_.paths.node(current).value ||
                (v == out_.paths.node(current).value && out_.paths.vertices(id) < out_.paths.vertices(current))) {
                out_.paths.set_entry(d, k, id, cfg_.archive, round);
            }
        }
    }

    PathId add_path(Vertex d, PathId from, Vertex k, int round, RoundStats& stats) {
        if (out_.paths.node_count() >= cfg_.max_nodes) {
            stop("max_nodes");
            return kNoPath;
        }
        const PathId id = out_.paths.extend(from, k, r_.raw(out_.paths.node(from).vertex, k), round);
        sym_pred_.push_back(sym_predecessor(out_.paths, id, rows_));
        log_[static_cast<std::size_t>(d)].push_back(id);
        ++entries_from_[static_cast<std::size_t>(d)];
        ++stats.entries_added;
        ++out_.trace.total_entries;
        return id;
    }

    void on_revisit(Vertex d, Vertex k, PathId q, const Admissibility& adm, int round) {
        const bool want_event = out_.trace.events.size() < cfg_.max_events;
        const bool may_extract = adm.reason == RejectReason::revisits_vertex && cfg_.extract_revisits;
        if (!want_event && !may_extract) {
            ++out_.trace.events_dropped;
            return;
        }
        PathId at = q;
        while (out_.paths.node(at).vertex != k) at = out_.paths.node(at).parent;
        const auto& tip = out_.paths.node(q);
        const Cost value = tip.value + r_.raw(tip.vertex, k) - out_.paths.node(at).value;
        const bool extract = may_extract && value < 0;
        if (!extract && !want_event) {
            ++out_.trace.events_dropped;
            return;
        }
        // Sub-cycle k .. c' k cut out of Q'.
        Cycle cycle;
        cycle.reserve(static_cast<std::size_t>(tip.length - out_.paths.node(at).length) + 1);
        for (PathId cur = q; cur != at; cur = out_.paths.node(cur).parent) cycle.push_back(out_.paths.node(cur).vertex);
        cycle.push_back(k);
        std::reverse(cycle.begin(), cycle.end());
        bool added = false;
        if (extract) added = record(cycle, d, round, ClosureKind::extracted);
        note_event({EventKind::revisit, round, k, d, canonical_rotation(cycle), value,
                    entries_from_[static_cast<std::size_t>(d)], added});
    }

    const ReducedMatrix& r_;
    const RowForm& rows_;
    SearchConfig cfg_;
    int n_;
    SearchResult out_;
    std::vector<Vertex> sources_;
    std::vector<std::vector<PathId>> log_;
    std::vector<std::size_t> mark_;
    std::vector<std::size_t> entries_from_;
    std::vector<Candidate> candidates_;
    std::vector<Vertex> sym_pred_;   // per node, see sym_predecessor
    bool all_paths_ = false;
};

} // namespace

SearchResult run_search(const ReducedMatrix& r, const RowForm& d, const SearchConfig& config) {
    if (d.size() != r.size()) throw SizeError("row form and reduced matrix sizes differ");
    return Search(r, d, config).run();
}

} // namespace derange
