#pragma once

#include "derange/assembly.hpp"
#include "derange/fw_engine.hpp"
#include "derange/optimizer.hpp"
#include "derange/oracle.hpp"

#include <json.hpp>

namespace derange {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json cycle_json(const Cycle& c);   // 1-based vertex list
Json permutation_json(const Permutation& p, const CostMatrix& m);
Json instance_json(const CostMatrix& m);

/// Parses {"image": [...]} or a bare 1-based image array. Throws ParseError.
Permutation permutation_from_json(const Json& j);
/// Parses {"n": n, "costs": [[...]]}. Throws ParseError and the matrix errors.
CostMatrix instance_from_json(const Json& j);
Cycle cycle_from_json(const Json& j);

Json search_trace_json(const SearchTrace& t);
Json descent_json(const DescentTrace& t, const CostMatrix& m, bool with_search_traces);
Json absolute_stats_json(const AbsoluteResult& r);
Json bound_json(const BoundReport& b);
Json violation_json(const Violation& v);
Json validation_json(const SetValidation& v);
Json oracle_json(const oracle::OracleResult& r, const CostMatrix& m);

} // namespace derange
