#include "derange/serialize.hpp"

#include "derange/error.hpp"

namespace derange {

Json cycle_json(const Cycle& c) {
    Json out = Json::array();
    for (const Vertex v : c) out.push_back(v + 1);
    return out;
}

Cycle cycle_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("cycle must be an array of vertices");
    Cycle c;
    for (const auto& v : j) {
        if (!v.is_number_integer()) throw ParseError("cycle vertex must be an integer");
        c.push_back(v.get<int>() - 1);
    }
    return c;
}

Json permutation_json(const Permutation& p, const CostMatrix& m) {
    Json out;
    out["image"] = p.one_based();
    out["cycles"] = cycle_notation(p);
    out["cost"] = permutation_cost(p, m);
    return out;
}

Permutation permutation_from_json(const Json& j) {
    const Json& image = j.is_object() ? j.value("image", Json()) : j;
    if (!image.is_array()) throw ParseError("permutation needs an \"image\" array");
    std::vector<int> one_based;
    for (const auto& v : image) {
        if (!v.is_number_integer()) throw ParseError("permutation image entries must be integers");
        one_based.push_back(v.get<int>());
    }
    return Permutation::from_one_based(one_based);
}

Json instance_json(const CostMatrix& m) {
    Json out;
    out["n"] = m.size();
    Json rows = Json::array();
    for (Vertex i = 0; i < m.size(); ++i) {
        Json row = Json::array();
        for (Vertex j = 0; j < m.size(); ++j) row.push_back(i == j ? 0 : m(i, j));
        rows.push_back(std::move(row));
    }
    out["costs"] = std::move(rows);
    return out;
}

CostMatrix instance_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("costs")) throw ParseError("instance needs \"n\" and \"costs\"");
    if (!j["n"].is_number_integer()) throw ParseError("\"n\" must be an integer");
    const int n = j["n"].get<int>();
    const auto& rows = j["costs"];
    if (!rows.is_array() || static_cast<int>(rows.size()) != n) throw ParseError("\"costs\" must have n rows");
    std::vector<Cost> flat;
    for (const auto& row : rows) {
        if (!row.is_array() || static_cast<int>(row.size()) != n) throw ParseError("every cost row must have n entries");
        for (const auto& v : row) {
            if (!v.is_number_integer()) throw ParseError("costs must be integers");
            flat.push_back(v.get<Cost>());
        }
    }
    return CostMatrix(n, std::move(flat));
}

Json search_trace_json(const SearchTrace& t) {
    Json out;
    Json rounds = Json::array();
    for (const auto& r : t.rounds) {
        rounds.push_back({{"round", r.round},
                          {"entries_added", r.entries_added},
                          {"cycles_closed", r.cycles_closed},
                          {"rejections", r.rejections},
                          {"columns_changed", r.columns_changed}});
    }
    out["rounds"] = std::move(rounds);
    Json reasons;
    for (std::size_t i = 1; i < t.rejections_by_reason.size(); ++i)
        reasons[to_string(static_cast<RejectReason>(i))] = t.rejections_by_reason[i];
    out["rejections_by_reason"] = std::move(reasons);
    out["total_entries"] = t.total_entries;
    out["shortcut_fired"] = t.shortcut_fired;
    Json events = Json::array();
    for (const auto& e : t.events) {
        events.push_back({{"kind", e.kind == EventKind::independent_closure ? "independent_closure" : "revisit"},
                          {"round", e.round},
                          {"column", e.column + 1},
                          {"source", e.source + 1},
                          {"cycle", cycle_json(e.cycle)},
                          {"value", e.value},
                          {"source_entries", e.source_entries},
                          {"recorded", e.recorded}});
    }
    out["events"] = std::move(events);
    out["events_dropped"] = t.events_dropped;
    return out;
}

Json descent_json(const DescentTrace& t, const CostMatrix& m, bool with_search_traces) {
    Json out;
    Json steps = Json::array();
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
        const auto& s = t.steps[i];
        Json step;
        step["step"] = i;
        step["derangement"] = permutation_json(s.derangement.perm(), m);
        Json applied = Json::array();
        for (const auto& c : s.applied) applied.push_back(cycle_json(c));
        step["applied"] = std::move(applied);
        step["set_value"] = s.set_value;
        if (i > 0) {
            step["search"] = {{"rounds", s.search.rounds},
                              {"pool_size", s.search.pool_size},
                              {"entries", s.search.entries},
                              {"complete", s.search.complete}};
        }
        steps.push_back(std::move(step));
    }
    out["steps"] = std::move(steps);
    out["termination"] = to_string(t.termination);
    out["complete"] = t.complete;
    out["sets_validated"] = t.sets_validated;
    out["sufficiency_failures"] = t.sufficiency_failures;
    out["necessity_gaps"] = t.necessity_gaps;
    if (with_search_traces) {
        Json traces = Json::array();
        for (const auto& st : t.search_traces) traces.push_back(search_trace_json(st));
        out["search_traces"] = std::move(traces);
    }
    return out;
}

Json absolute_stats_json(const AbsoluteResult& r) {
    const auto& s = r.stats;
    Json out;
    out["negative_cycles"] = s.negative_cycles;
    out["positive_cycles"] = s.positive_cycles;
    out["families"] = s.families;
    out["v"] = s.v ? Json(*s.v) : Json();
    out["candidate_sets"] = s.candidate_sets;
    out["valid_sets"] = s.valid_sets;
    out["from_engine"] = s.from_engine;
    out["from_archive"] = s.from_archive;
    out["determining_vertices"] = cycle_json(s.determining_vertices);
    Json chosen = Json::array();
    for (const auto& c : r.chosen) chosen.push_back(cycle_json(c));
    out["chosen"] = std::move(chosen);
    out["chosen_value"] = r.chosen_value;
    out["complete"] = r.complete;
    out["approximate"] = r.approximate;
    out["limit_hit"] = r.limit_hit;
    return out;
}

Json bound_json(const BoundReport& b) {
    Json out = Json::array();
    for (const auto& l : b.lines)
        out.push_back({{"label", l.label}, {"lhs", l.lhs}, {"rhs", l.rhs}, {"holds", l.holds}, {"assertable", l.assertable}, {"text", l.text()}});
    return out;
}

Json violation_json(const Violation& v) {
    return {{"kind", to_string(v.kind)}, {"detail", v.describe()}};
}

Json validation_json(const SetValidation& v) {
    Json out;
    out["valid"] = v.valid;
    out["conditions_hold"] = v.conditions_hold;
    out["certificate_ok"] = v.certificate_ok;
    out["value"] = v.value;
    Json violations = Json::array();
    for (const auto& x : v.violations) violations.push_back(violation_json(x));
    out["violations"] = std::move(violations);
    return out;
}

Json oracle_json(const oracle::OracleResult& r, const CostMatrix& m) {
    Json out;
    out["optimum"] = r.optimum;
    out["witness"] = permutation_json(r.witness, m);
    out["search_space"] = r.search_space;
    out["elapsed_ms"] = r.elapsed_ms;
    return out;
}

} // namespace derange
