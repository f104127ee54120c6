#pragma once

#include "derange/serialize.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace derange::cli {

enum ExitCode { kOk = 0, kViolation = 1, kUsage = 2, kCap = 3 };

enum class Initial { canonical, greedy, file };

struct RunConfig {
    std::string json_path;
    std::string tsplib_path;
    int n = 0;
    std::uint64_t seed = 1;
    Cost lo = 1;
    Cost hi = 100;
    Initial initial = Initial::canonical;
    std::string initial_file;
    bool absolute = false;
    bool with_oracle = false;
    bool single_cycle = false;
    std::size_t max_steps = 1'000'000;
    SearchConfig search;
    AbsoluteSearchLimits limits;
    std::string output;
    std::string trace_path;
    bool verbose = false;
};

/// Loads or generates the instance named by `cfg`; exactly one source must
/// be given. Throws ParseError otherwise.
CostMatrix load_input(const RunConfig& cfg, std::string* id, std::vector<std::string>* warnings);

/// Full solve pipeline. The result carries everything `check` needs; wall
/// times only appear under "metadata". `traces` receives per-step search
/// traces when non-null.
Json solve(const RunConfig& cfg, Json* traces = nullptr);

struct CheckReport {
    std::vector<std::string> violations;
    std::vector<std::string> notes;
    bool ok() const { return violations.empty(); }
};

/// Recomputes every invariant claimed by a solve result from the embedded
/// instance, plus oracle comparisons when n is within the oracle caps.
/// Throws ParseError for a structurally malformed file.
CheckReport check_result(const Json& result);

int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args);   // args[0] is the program name

} // namespace derange::cli
