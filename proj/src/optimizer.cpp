#include "derange/optimizer.hpp"

#include "derange/error.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>

namespace derange {

const char* to_string(Termination t) {
    switch (t) {
    case Termination::no_valid_negative_set: return "no_valid_negative_set";
    case Termination::step_cap: return "step_cap";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Descent

namespace {

bool only_sym_violations(const SetValidation& v) {
    return std::all_of(v.violations.begin(), v.violations.end(), [](const Violation& x) {
        return x.kind == Violation::Kind::sym_outside_set || x.kind == Violation::Kind::fixed_point ||
               x.kind == Violation::Kind::two_cycle;
    });
}

} // namespace

StepChoice choose_cycle_set(const CyclePool& pool, const RowForm& d, const ReducedMatrix& r, bool single_cycle) {
    StepChoice out;
    const int n = r.size();
    const auto& records = pool.records();
    std::vector<std::size_t> order(records.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (records[a].value != records[b].value) return records[a].value < records[b].value;
        return records[a].cycle < records[b].cycle;
    });

    auto validate = [&](const std::vector<Cycle>& cycles) {
        const auto v = validate_cycle_set(CycleSet(n, cycles), d, r);
        ++out.validated;
        if (v.conditions_hold && !v.certificate_ok) ++out.sufficiency_failures;
        if (!v.conditions_hold && v.certificate_ok) ++out.necessity_gaps;
        return v;
    };

    if (single_cycle) {
        for (const auto idx : order) {
            if (validate({records[idx].cycle}).valid) {
                out.set = CycleSet(n, {records[idx].cycle});
                out.value = records[idx].value;
                return out;
            }
        }
        return out;
    }

    std::vector<Cycle> chosen;
    Cost total = 0;
    std::vector<char> covered(static_cast<std::size_t>(n), 0);
    std::vector<std::size_t> candidates = order;
    while (!candidates.empty()) {
        std::vector<std::size_t> retry;
        bool progress = false;
        for (const auto idx : candidates) {
            const auto& rec = records[idx];
            if (std::any_of(rec.cycle.begin(), rec.cycle.end(),
                            [&](Vertex v) { return covered[static_cast<std::size_t>(v)] != 0; }))
                continue;
            chosen.push_back(rec.cycle);
            const auto v = validate(chosen);
            if (v.valid) {
                total += rec.value;
                for (const Vertex x : rec.cycle) covered[static_cast<std::size_t>(x)] = 1;
                progress = true;
            } else {
                chosen.pop_back();
                // Cycles blocked only by an uncovered SYM target may fit once
                // later cycles cover it.
                if (only_sym_violations(v)) retry.push_back(idx);
            }
        }
        if (!progress) break;
        candidates = std::move(retry);
    }
    if (!chosen.empty()) {
        out.set = CycleSet(n, std::move(chosen));
        out.value = total;
    }
    return out;
}

DescentTrace descend_to_fwabs(const CostMatrix& m, const Derangement& d0, const DescentConfig& config) {
    if (d0.size() != m.size()) throw SizeError("initial derangement and matrix sizes differ");
    DescentTrace trace;
    trace.steps.push_back({d0, permutation_cost(d0.perm(), m), {}, 0, {}});

    while (true) {
        const DescentStep& cur = trace.steps.back();
        if (trace.steps.size() - 1 >= config.max_steps) {
            trace.termination = Termination::step_cap;
            trace.complete = false;
            break;
        }
        const auto t0 = std::chrono::steady_clock::now();
        auto lap = [&] {
            trace.iteration_ms.push_back(
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
        };
        const ReducedMatrix r = build_reduced(m, cur.derangement);
        SearchResult sr = run_search(r, cur.derangement.rows(), config.search);
        const SearchSummary summary{sr.trace.rounds.size(), sr.pool.size(), sr.trace.total_entries, sr.complete};
        if (!sr.complete) trace.complete = false;

        const StepChoice choice = choose_cycle_set(sr.pool, cur.derangement.rows(), r, config.single_cycle_per_step);
        trace.sets_validated += choice.validated;
        trace.sufficiency_failures += choice.sufficiency_failures;
        trace.necessity_gaps += choice.necessity_gaps;
        if (config.keep_search_traces) trace.search_traces.push_back(std::move(sr.trace));

        if (!choice.set || choice.value >= 0) {
            lap();
            trace.termination = Termination::no_valid_negative_set;
            break;
        }
        Derangement next = apply_cycle_set(*choice.set, cur.derangement);
        const Cost next_cost = permutation_cost(next.perm(), m);
        if (next_cost != cur.cost + choice.value) {
            throw InconsistentStateError("cost change " + std::to_string(next_cost - cur.cost) +
                                         " differs from set value " + std::to_string(choice.value));
        }
        lap();
        trace.steps.push_back({std::move(next), next_cost, choice.set->cycles(), choice.value, summary});
    }
    return trace;
}

// ---------------------------------------------------------------------------
// Absolute search

void AbsoluteSearchLimits::validate() const {
    if (max_cycle_len <= 0 || max_cycles_per_set <= 0 || max_candidate_sets == 0 || max_enumerated_cycles == 0 ||
        time_budget_ms <= 0) {
        throw RangeError("absolute-search limits must all be positive");
    }
}

namespace {

using Clock = std::chrono::steady_clock;

struct Candidate {
    Cycle cycle;
    Cost value;
};

// Disjoint-cycle families over a candidate list, enumerated vertex by
// vertex: the smallest undecided vertex is either left alone or covered by a
// cycle whose minimum it is. Every family is visited exactly once.
class FamilyWalk {
public:
    FamilyWalk(int n, const std::vector<Candidate>& cycles, int max_per_set)
        : n_(n), cycles_(cycles), max_per_set_(max_per_set), buckets_(static_cast<std::size_t>(n)),
          covered_(static_cast<std::size_t>(n), 0) {
        for (std::size_t i = 0; i < cycles.size(); ++i) buckets_[static_cast<std::size_t>(cycles[i].cycle.front())].push_back(i);
        for (auto& b : buckets_)
            std::stable_sort(b.begin(), b.end(), [&](std::size_t a, std::size_t c) { return cycles_[a].value < cycles_[c].value; });
    }

    // `leaf(chosen indices, total)` returns false to stop the walk.
    template <class Leaf>
    bool run(Leaf&& leaf) {
        chosen_.clear();
        return go(0, 0, leaf);
    }

    const std::vector<std::size_t>& chosen() const { return chosen_; }

private:
    template <class Leaf>
    bool go(Vertex v, Cost total, Leaf& leaf) {
        while (v < n_ && covered_[static_cast<std::size_t>(v)]) ++v;
        if (v == n_) return leaf(chosen_, total);
        if (static_cast<int>(chosen_.size()) < max_per_set_) {
            for (const auto idx : buckets_[static_cast<std::size_t>(v)]) {
                const auto& c = cycles_[idx].cycle;
                if (std::any_of(c.begin(), c.end(), [&](Vertex x) { return covered_[static_cast<std::size_t>(x)] != 0; }))
                    continue;
                for (const Vertex x : c) covered_[static_cast<std::size_t>(x)] = 1;
                chosen_.push_back(idx);
                const bool more = go(v + 1, total + cycles_[idx].value, leaf);
                chosen_.pop_back();
                for (const Vertex x : c) covered_[static_cast<std::size_t>(x)] = 0;
                if (!more) return false;
            }
        }
        return go(v + 1, total, leaf);
    }

    int n_;
    const std::vector<Candidate>& cycles_;
    int max_per_set_;
    std::vector<std::vector<std::size_t>> buckets_;
    std::vector<char> covered_;
    std::vector<std::size_t> chosen_;
};

} // namespace

AbsoluteResult search_absolute(const CostMatrix& m, const Derangement& dfw, const AbsoluteSearchLimits& limits) {
    limits.validate();
    if (dfw.size() != m.size()) throw SizeError("derangement and matrix sizes differ");
    const auto t0 = Clock::now();
    const auto deadline = t0 + std::chrono::milliseconds(limits.time_budget_ms);
    const int n = m.size();

    AbsoluteResult out{dfw, permutation_cost(dfw.perm(), m), {}, 0, {}, true, false, {}};
    auto stop = [&](const char* why) {
        out.complete = false;
        if (out.limit_hit.empty()) out.limit_hit = why;
    };

    const ReducedMatrix r = build_reduced(m, dfw);
    SearchConfig sc;
    sc.archive = true;
    const SearchResult sr = run_search(r, dfw.rows(), sc);
    if (!sr.complete) stop("engine_cap");

    std::map<Cycle, Cost> negative;
    std::map<Cycle, Cost> nonnegative;
    auto keep = [&](Cycle c, Cost value) {
        auto& bucket = value < 0 ? negative : nonnegative;
        return bucket.emplace(canonical_rotation(c), value).second;
    };

    // Negative cycles found by the path search, and the roots they were
    // closed from.
    std::vector<Vertex> determining;
    for (const auto& rec : sr.pool.records()) {
        if (keep(rec.cycle, rec.value)) ++out.stats.from_engine;
        determining.push_back(rec.root);
    }
    std::sort(determining.begin(), determining.end());
    determining.erase(std::unique(determining.begin(), determining.end()), determining.end());
    out.stats.determining_vertices = determining;

    // Close every retained or archived path rooted at a determining vertex.
    std::vector<char> is_determining(static_cast<std::size_t>(n), 0);
    for (const Vertex v : determining) is_determining[static_cast<std::size_t>(v)] = 1;
    auto close_path = [&](PathId id) {
        const auto& node = sr.paths.node(id);
        if (node.length < 1 || !r.permitted(node.vertex, node.root)) return;
        if (keep(sr.paths.vertices(id), node.value + r.raw(node.vertex, node.root))) ++out.stats.from_archive;
    };
    for (const Vertex d : determining)
        for (Vertex t = 0; t < n; ++t)
            if (!sr.paths.blank(d, t)) close_path(sr.paths.entry(d, t));
    for (const auto& a : sr.paths.archive())
        if (is_determining[static_cast<std::size_t>(a.source)]) close_path(a.path);

    // Bounded depth-first enumeration, trees rooted at determining vertices
    // first. Each cycle is generated from its minimum vertex.
    std::vector<Vertex> roots = determining;
    for (Vertex v = 0; v < n; ++v)
        if (!is_determining[static_cast<std::size_t>(v)]) roots.push_back(v);
    std::size_t enumerated = 0;
    std::size_t ticks = 0;
    bool halted = false;
    std::vector<char> on(static_cast<std::size_t>(n), 0);
    Cycle path;
    auto dfs = [&](auto&& self, Vertex start, Vertex v, Cost value) -> void {
        if (halted) return;
        if ((++ticks & 0xfff) == 0 && Clock::now() > deadline) {
            halted = true;
            stop("time_budget");
            return;
        }
        if (path.size() >= 2 && r.permitted(v, start)) {
            keep(path, value + r.raw(v, start));
            if (++enumerated >= limits.max_enumerated_cycles) {
                halted = true;
                stop("max_enumerated_cycles");
                return;
            }
        }
        if (static_cast<int>(path.size()) >= limits.max_cycle_len) return;
        for (Vertex w = start + 1; w < n && !halted; ++w) {
            if (on[static_cast<std::size_t>(w)] || !r.permitted(v, w)) continue;
            on[static_cast<std::size_t>(w)] = 1;
            path.push_back(w);
            self(self, start, w, value + r.raw(v, w));
            path.pop_back();
            on[static_cast<std::size_t>(w)] = 0;
        }
    };
    for (const Vertex s : roots) {
        if (halted) break;
        on[static_cast<std::size_t>(s)] = 1;
        path.assign(1, s);
        dfs(dfs, s, s, 0);
        on[static_cast<std::size_t>(s)] = 0;
    }

    out.stats.negative_cycles = negative.size();
    auto finish = [&] {
        out.approximate = !out.complete || limits.max_cycle_len < n;
        out.stats.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
        return out;
    };
    if (negative.empty()) return finish();

    // V over the disjoint negative families.
    std::vector<Candidate> neg_list;
    for (const auto& [c, v] : negative) neg_list.push_back({c, v});
    std::size_t leaves = 0;
    Cost v_min = 0;
    {
        FamilyWalk walk(n, neg_list, limits.max_cycles_per_set);
        walk.run([&](const std::vector<std::size_t>& chosen, Cost total) {
            if (++leaves >= limits.max_candidate_sets) {
                stop("max_candidate_sets");
                return false;
            }
            if ((leaves & 0xfff) == 0 && Clock::now() > deadline) {
                stop("time_budget");
                return false;
            }
            if (chosen.empty()) return true;
            ++out.stats.families;
            v_min = std::min(v_min, total);
            return true;
        });
    }
    out.stats.v = v_min;

    // POS: non-negative cycles cheaper than -V, then every disjoint union.
    std::vector<Candidate> all = neg_list;
    for (const auto& [c, v] : nonnegative) {
        if (v < -v_min) {
            all.push_back({c, v});
            ++out.stats.positive_cycles;
        }
    }
    bool have_best = false;
    Cost best_value = 0;
    std::vector<Cycle> best_cycles;
    FamilyWalk walk(n, all, limits.max_cycles_per_set);
    leaves = 0;
    walk.run([&](const std::vector<std::size_t>& chosen, Cost total) {
        if (++leaves >= limits.max_candidate_sets) {
            stop("max_candidate_sets");
            return false;
        }
        if ((leaves & 0xfff) == 0 && Clock::now() > deadline) {
            stop("time_budget");
            return false;
        }
        if (total >= 0 || (have_best && total >= best_value)) return true;
        if (std::none_of(chosen.begin(), chosen.end(), [&](std::size_t i) { return all[i].value < 0; })) return true;
        ++out.stats.candidate_sets;
        std::vector<Cycle> cycles;
        for (const auto i : chosen) cycles.push_back(all[i].cycle);
        const auto verdict = validate_cycle_set(CycleSet(n, cycles), dfw.rows(), r);
        if (!verdict.valid) return true;
        ++out.stats.valid_sets;
        have_best = true;
        best_value = total;
        best_cycles = std::move(cycles);
        return true;
    });

    if (have_best) {
        out.derangement = apply_cycle_set(CycleSet(n, best_cycles), dfw);
        out.cost = permutation_cost(out.derangement.perm(), m);
        out.chosen = std::move(best_cycles);
        out.chosen_value = best_value;
    }
    return finish();
}

// ---------------------------------------------------------------------------
// Bound chain

std::string BoundLine::text() const { return std::to_string(lhs) + " ≤ " + std::to_string(rhs); }

bool BoundReport::ok() const {
    return std::all_of(lines.begin(), lines.end(), [](const BoundLine& l) { return l.holds || !l.assertable; });
}

BoundReport bound_chain(const CostMatrix& m, Cost dfw_cost, Cost dabs_cost, const std::optional<Permutation>& tour,
                        std::optional<Cost> oracle_min, std::optional<Cost> d0_cost) {
    BoundReport report;
    auto line = [&](std::string label, Cost lhs, Cost rhs, bool assertable = true) {
        report.lines.push_back({std::move(label), lhs, rhs, lhs <= rhs, assertable});
    };
    line("d_absolute <= d_fwabs", dabs_cost, dfw_cost);
    if (d0_cost) line("d_fwabs <= d0", dfw_cost, *d0_cost);
    if (oracle_min) line("oracle_min <= d_absolute", *oracle_min, dabs_cost);
    if (tour) {
        if (tour->size() != m.size()) throw NonTourError("tour size differs from the instance");
        const auto cycles = cycle_decomposition(*tour);
        if (cycles.size() != 1) throw NonTourError("tour is not a single cycle: " + cycle_notation(*tour));
        const Cost tour_cost = permutation_cost(*tour, m);
        if (oracle_min)
            line("oracle_min <= tour", *oracle_min, tour_cost);
        else
            line("d_absolute <= tour", dabs_cost, tour_cost, false);
    }
    return report;
}

} // namespace derange
