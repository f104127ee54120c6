#include "derange/cli.hpp"

#include "derange/error.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

namespace derange::cli {

namespace {

using Clock = std::chrono::steady_clock;

double ms_between(Clock::time_point a, Clock::time_point b) {
    return std::chrono::duration<double, std::milli>(b - a).count();
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write " + path);
    out << text;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

const char* to_string(Initial i) {
    switch (i) {
    case Initial::canonical: return "canonical";
    case Initial::greedy: return "greedy";
    case Initial::file: return "file";
    }
    return "?";
}

Derangement initial_derangement(const RunConfig& cfg, const CostMatrix& m) {
    switch (cfg.initial) {
    case Initial::canonical: return canonical_cycle(m.size());
    case Initial::greedy: return greedy_two_factor(m);
    case Initial::file: {
        if (cfg.initial_file.empty()) throw ParseError("--initial file needs --initial-file");
        Permutation p = permutation_from_json(read_json_file(cfg.initial_file));
        if (p.size() != m.size()) throw SizeError("initial derangement has the wrong size");
        return Derangement(std::move(p));
    }
    }
    throw ParseError("unknown initial derangement");
}

Json config_json(const RunConfig& cfg) {
    Json out;
    out["initial"] = to_string(cfg.initial);
    if (cfg.initial == Initial::file) out["initial_file"] = cfg.initial_file;
    out["single_cycle"] = cfg.single_cycle;
    out["max_steps"] = cfg.max_steps;
    out["search"] = {{"labels", to_string(cfg.search.labels)},
                     {"exhaustive_up_to", cfg.search.exhaustive_up_to},
                     {"max_rounds", cfg.search.max_rounds},
                     {"archive", cfg.search.archive},
                     {"max_nodes", cfg.search.max_nodes},
                     {"max_cycles", cfg.search.max_cycles}};
    out["absolute"] = cfg.absolute;
    if (cfg.absolute) {
        out["limits"] = {{"max_cycle_len", cfg.limits.max_cycle_len},
                         {"max_cycles_per_set", cfg.limits.max_cycles_per_set},
                         {"max_candidate_sets", cfg.limits.max_candidate_sets},
                         {"max_enumerated_cycles", cfg.limits.max_enumerated_cycles},
                         {"time_budget_ms", cfg.limits.time_budget_ms}};
    }
    out["with_oracle"] = cfg.with_oracle;
    return out;
}

} // namespace

CostMatrix load_input(const RunConfig& cfg, std::string* id, std::vector<std::string>* warnings) {
    const int sources = !cfg.json_path.empty() + !cfg.tsplib_path.empty() + (cfg.n > 0);
    if (sources != 1) throw ParseError("give exactly one of --json, --tsplib or -n");
    if (!cfg.json_path.empty()) {
        if (id) *id = cfg.json_path;
        return load_instance_file(cfg.json_path, InstanceFormat::json, warnings);
    }
    if (!cfg.tsplib_path.empty()) {
        if (id) *id = cfg.tsplib_path;
        return load_instance_file(cfg.tsplib_path, InstanceFormat::tsplib, warnings);
    }
    if (id) {
        *id = "random:n=" + std::to_string(cfg.n) + ",seed=" + std::to_string(cfg.seed) + ",lo=" +
              std::to_string(cfg.lo) + ",hi=" + std::to_string(cfg.hi);
    }
    return random_instance(cfg.n, cfg.lo, cfg.hi, cfg.seed);
}

Json solve(const RunConfig& cfg, Json* traces) {
    const auto t0 = Clock::now();
    std::string id;
    std::vector<std::string> warnings;
    const CostMatrix m = load_input(cfg, &id, &warnings);
    const Derangement d0 = initial_derangement(cfg, m);

    DescentConfig dc;
    dc.search = cfg.search;
    dc.single_cycle_per_step = cfg.single_cycle;
    dc.max_steps = cfg.max_steps;
    dc.keep_search_traces = traces != nullptr;
    const DescentTrace trace = descend_to_fwabs(m, d0, dc);
    const auto t1 = Clock::now();
    const Derangement& dfw = trace.final().derangement;

    Json out;
    out["schema_version"] = kSchemaVersion;
    Json inst;
    inst["id"] = id;
    inst.update(instance_json(m));
    out["instance"] = std::move(inst);
    out["warnings"] = warnings;
    out["config"] = config_json(cfg);
    out["d0"] = permutation_json(d0.perm(), m);
    out["trace"] = descent_json(trace, m, false);
    out["d_fwabs"] = permutation_json(dfw.perm(), m);

    Cost dabs_cost = trace.final().cost;
    bool incomplete = !trace.complete;
    bool approximate = false;
    double absolute_ms = 0;
    if (cfg.absolute) {
        const AbsoluteResult ar = search_absolute(m, dfw, cfg.limits);
        out["d_absolute"] = permutation_json(ar.derangement.perm(), m);
        out["absolute_stats"] = absolute_stats_json(ar);
        dabs_cost = ar.cost;
        incomplete = incomplete || !ar.complete;
        approximate = ar.approximate;
        absolute_ms = ar.stats.elapsed_ms;
    } else {
        out["d_absolute"] = nullptr;
        out["absolute_stats"] = nullptr;
    }

    const Permutation tour = nearest_neighbor_tour(m);
    std::optional<Cost> oracle_min;
    if (cfg.with_oracle) {
        const auto o = oracle::brute_min_edge_derangement(m);
        oracle_min = o.optimum;
        out["oracle"] = {{"min_edge_derangement", o.optimum}, {"witness", permutation_json(o.witness, m)}};
    } else {
        out["oracle"] = nullptr;
    }
    out["tour"] = permutation_json(tour, m);
    out["bound_chain"] = bound_json(bound_chain(m, trace.final().cost, dabs_cost, tour, oracle_min, trace.steps.front().cost));
    out["flags"] = {{"incomplete", incomplete}, {"approximate", approximate}};
    out["metadata"] = {{"descent_ms", ms_between(t0, t1)},
                       {"absolute_ms", absolute_ms},
                       {"total_ms", ms_between(t0, Clock::now())}};

    if (traces) {
        *traces = Json::array();
        for (const auto& st : trace.search_traces) traces->push_back(search_trace_json(st));
    }
    return out;
}

// ---------------------------------------------------------------------------
// check

namespace {

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("result is missing \"") + key + "\"");
    return j[key];
}

Cost cost_field(const Json& j) {
    const Json& c = field(j, "cost");
    if (!c.is_number_integer()) throw ParseError("\"cost\" must be an integer");
    return c.get<Cost>();
}

} // namespace

CheckReport check_result(const Json& result) {
    CheckReport rep;
    auto fail = [&](std::string what) { rep.violations.push_back(std::move(what)); };

    if (field(result, "schema_version") != kSchemaVersion) fail("unsupported schema_version");
    const CostMatrix m = instance_from_json(field(result, "instance"));
    const int n = m.size();

    // A claimed derangement: edge-derangement certificate and exact cost.
    auto derangement_at = [&](const Json& j, const std::string& where) -> std::optional<Permutation> {
        Permutation p = permutation_from_json(j);
        if (p.size() != n) {
            fail(where + ": size " + std::to_string(p.size()) + " differs from n");
            return std::nullopt;
        }
        const auto chk = is_edge_derangement(p);
        if (!chk.ok()) {
            fail(where + ": not a derangement of edges, " + chk.describe());
            return std::nullopt;
        }
        const Cost claimed = cost_field(j);
        const Cost actual = permutation_cost(p, m);
        if (claimed != actual)
            fail(where + ": claimed cost " + std::to_string(claimed) + ", actual " + std::to_string(actual));
        return p;
    };

    const auto d0 = derangement_at(field(result, "d0"), "d0");
    const auto dfw = derangement_at(field(result, "d_fwabs"), "d_fwabs");

    const Json& steps = field(field(result, "trace"), "steps");
    if (!steps.is_array() || steps.empty()) throw ParseError("trace.steps must be a non-empty array");
    std::optional<Permutation> prev;
    Cost prev_cost = 0;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const std::string where = "step " + std::to_string(i);
        const auto cur = derangement_at(field(steps[i], "derangement"), where);
        if (!cur) {
            prev.reset();
            continue;
        }
        const Cost cur_cost = permutation_cost(*cur, m);
        if (i == 0 && d0 && !(*cur == *d0)) fail("step 0 differs from d0");
        if (i > 0 && prev) {
            const Cost set_value = field(steps[i], "set_value").get<Cost>();
            if (set_value >= 0) fail(where + ": set value " + std::to_string(set_value) + " is not negative");
            if (cur_cost >= prev_cost) fail(where + ": cost did not decrease");
            if (cur_cost - prev_cost != set_value)
                fail(where + ": cost change " + std::to_string(cur_cost - prev_cost) + " differs from set value");
            std::vector<Cycle> cycles;
            for (const auto& c : field(steps[i], "applied")) cycles.push_back(cycle_from_json(c));
            try {
                const CycleSet s(n, cycles);
                const Derangement pd(*prev);
                const ReducedMatrix r = build_reduced(m, pd);
                if (cycle_set_value(s, r) != set_value) fail(where + ": set value differs from its reduced-matrix value");
                if (!(compose_apply(pd, s.product()) == *cur)) fail(where + ": derangement is not D composed with its set");
            } catch (const Error& e) {
                fail(where + ": applied set rejected, " + e.what());
            }
        }
        prev = cur;
        prev_cost = cur_cost;
    }
    if (prev && dfw && !(*prev == *dfw)) fail("d_fwabs differs from the last trace step");

    const Json& dabs_j = field(result, "d_absolute");
    std::optional<Cost> dabs_cost;
    if (!dabs_j.is_null()) {
        if (const auto dabs = derangement_at(dabs_j, "d_absolute")) {
            dabs_cost = permutation_cost(*dabs, m);
            if (dfw && *dabs_cost > permutation_cost(*dfw, m)) fail("d_absolute costs more than d_fwabs");
        }
    }
    if (d0 && dfw && permutation_cost(*dfw, m) > permutation_cost(*d0, m)) fail("d_fwabs costs more than d0");

    for (const auto& line : field(result, "bound_chain")) {
        const Cost lhs = field(line, "lhs").get<Cost>();
        const Cost rhs = field(line, "rhs").get<Cost>();
        const bool holds = lhs <= rhs;
        if (field(line, "holds").get<bool>() != holds)
            fail("bound chain line " + field(line, "label").get<std::string>() + " misreports its verdict");
        if (holds) continue;
        // Only the heuristic-tour line is report-only; the file's own flag is not trusted.
        if (field(line, "label").get<std::string>() != "d_absolute <= tour")
            fail("bound chain line " + field(line, "label").get<std::string>() + " does not hold");
        else
            rep.notes.push_back("report-only line " + field(line, "label").get<std::string>() + " does not hold");
    }
    const Json& tour_j = field(result, "tour");
    const Permutation tour = permutation_from_json(tour_j);
    if (tour.size() != n || cycle_decomposition(tour).size() != 1) {
        fail("tour is not a single n-cycle");
    } else if (cost_field(tour_j) != permutation_cost(tour, m)) {
        fail("tour cost is wrong");
    }

    if (n <= oracle::kMaxDerangementN) {
        const Cost best = oracle::brute_min_edge_derangement(m).optimum;
        if (dfw && permutation_cost(*dfw, m) < best) fail("d_fwabs is below the exact minimum");
        if (dabs_cost && *dabs_cost < best) fail("d_absolute is below the exact minimum");
        const Cost reached = dabs_cost ? *dabs_cost : permutation_cost(*dfw, m);
        rep.notes.push_back("exact minimum " + std::to_string(best) + ", solver reached " + std::to_string(reached));
        if (n <= oracle::kMaxTourN) {
            const Cost opt_tour = oracle::brute_optimal_tour(m).optimum;
            if (best > opt_tour) fail("exact minimum exceeds the optimal tour");
            rep.notes.push_back("optimal tour " + std::to_string(opt_tour));
        }
    } else {
        rep.notes.push_back("n above oracle cap; oracle comparisons skipped");
    }
    return rep;
}

// ---------------------------------------------------------------------------
// bench

namespace {

struct BenchRow {
    int n = 0;
    std::uint64_t seed = 0;
    Cost d0_cost = 0;
    Cost fwabs_cost = 0;
    std::size_t steps = 0;
    std::size_t rounds = 0;
    std::size_t pool_total = 0;
    double first_step_ms = 0;
    double descent_ms = 0;
    std::optional<Cost> absolute_cost;
    double absolute_ms = 0;
    Cost tour_cost = 0;
    std::optional<Cost> oracle_min;
    bool complete = true;
    std::string error;
};

BenchRow bench_one(const RunConfig& cfg, int n, std::uint64_t seed) {
    BenchRow row;
    row.n = n;
    row.seed = seed;
    const CostMatrix m = random_instance(n, cfg.lo, cfg.hi, seed);
    const Derangement d0 = cfg.initial == Initial::greedy ? greedy_two_factor(m) : canonical_cycle(n);

    // One descent step timed on its own: reduce, search, assemble, apply.
    const auto s0 = Clock::now();
    {
        const ReducedMatrix r = build_reduced(m, d0);
        const SearchResult sr = run_search(r, d0.rows(), cfg.search);
        const StepChoice choice = choose_cycle_set(sr.pool, d0.rows(), r, cfg.single_cycle);
        if (choice.set) (void)apply_cycle_set(*choice.set, d0);
    }
    row.first_step_ms = ms_between(s0, Clock::now());

    DescentConfig dc;
    dc.search = cfg.search;
    dc.single_cycle_per_step = cfg.single_cycle;
    dc.max_steps = cfg.max_steps;
    const auto t0 = Clock::now();
    const DescentTrace trace = descend_to_fwabs(m, d0, dc);
    row.descent_ms = ms_between(t0, Clock::now());
    if (!trace.iteration_ms.empty()) row.first_step_ms = trace.iteration_ms.front();
    row.d0_cost = trace.steps.front().cost;
    row.fwabs_cost = trace.final().cost;
    row.steps = trace.steps.size() - 1;
    for (std::size_t i = 1; i < trace.steps.size(); ++i) {
        row.rounds += trace.steps[i].search.rounds;
        row.pool_total += trace.steps[i].search.pool_size;
    }
    row.complete = trace.complete;
    if (cfg.absolute) {
        const AbsoluteResult ar = search_absolute(m, trace.final().derangement, cfg.limits);
        row.absolute_cost = ar.cost;
        row.absolute_ms = ar.stats.elapsed_ms;
        row.complete = row.complete && ar.complete;
    }
    row.tour_cost = permutation_cost(nearest_neighbor_tour(m), m);
    if (n <= oracle::kMaxDerangementN) row.oracle_min = oracle::brute_min_edge_derangement(m).optimum;
    return row;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
    std::ostringstream out;
    out << "n,seed,d0_cost,fwabs_cost,steps,search_rounds,pool_total,first_step_ms,descent_ms,absolute_cost,"
           "absolute_ms,nn_tour_cost,oracle_min,gap_to_oracle,complete,error\n";
    auto opt = [](const std::optional<Cost>& v) { return v ? std::to_string(*v) : std::string(); };
    for (const auto& r : rows) {
        const Cost reached = r.absolute_cost.value_or(r.fwabs_cost);
        std::string gap;
        if (r.oracle_min && r.error.empty() && *r.oracle_min != 0) {
            std::ostringstream g;
            g << static_cast<double>(reached - *r.oracle_min) / static_cast<double>(*r.oracle_min);
            gap = g.str();
        }
        out << r.n << ',' << r.seed << ',' << r.d0_cost << ',' << r.fwabs_cost << ',' << r.steps << ',' << r.rounds
            << ',' << r.pool_total << ',' << r.first_step_ms << ',' << r.descent_ms << ',' << opt(r.absolute_cost)
            << ',' << r.absolute_ms << ',' << r.tour_cost << ',' << opt(r.oracle_min) << ',' << gap << ','
            << (r.complete ? 1 : 0) << ',' << r.error << '\n';
    }
    return out.str();
}

int run_bench(const RunConfig& cfg, const std::vector<int>& sizes, int seeds, unsigned threads) {
    struct Job {
        int n;
        std::uint64_t seed;
    };
    std::vector<Job> jobs;
    for (const int n : sizes)
        for (int k = 0; k < seeds; ++k) jobs.push_back({n, cfg.seed + static_cast<std::uint64_t>(k)});

    std::vector<BenchRow> rows(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            try {
                rows[i] = bench_one(cfg, jobs[i].n, jobs[i].seed);
            } catch (const std::exception& e) {
                rows[i].n = jobs[i].n;
                rows[i].seed = jobs[i].seed;
                rows[i].error = e.what();
            }
            if (cfg.verbose) std::cerr << "bench n=" << jobs[i].n << " seed=" << jobs[i].seed << " done\n";
        }
    };
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(jobs.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    // Rows are already in (size, seed) order: each job wrote its own slot.
    write_text(cfg.output, bench_csv(rows));

    std::map<int, std::vector<const BenchRow*>> by_n;
    for (const auto& r : rows) by_n[r.n].push_back(&r);
    std::cerr << "n\truns\tmean_first_step_ms\tmean_descent_ms\tmean_fwabs/nn_tour\n";
    bool all_ok = true;
    for (const auto& [n, rs] : by_n) {
        double step = 0, descent = 0, ratio = 0;
        int ok = 0;
        for (const auto* r : rs) {
            if (!r->error.empty()) {
                all_ok = false;
                continue;
            }
            ++ok;
            step += r->first_step_ms;
            descent += r->descent_ms;
            ratio += static_cast<double>(r->fwabs_cost) / static_cast<double>(r->tour_cost);
        }
        if (ok == 0) continue;
        std::cerr << n << '\t' << ok << '\t' << step / ok << '\t' << descent / ok << '\t' << ratio / ok << '\n';
    }
    return all_ok ? kOk : kViolation;
}

} // namespace

// ---------------------------------------------------------------------------
// entry point

int run(int argc, const char* const* argv) {
    CLI::App app{"Low-cost derangements of edges by negative-cycle search"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_input = [&](CLI::App* sc) {
        sc->add_option("--json", cfg.json_path, "JSON instance file");
        sc->add_option("--tsplib", cfg.tsplib_path, "TSPLIB instance file");
        sc->add_option("-n", cfg.n, "generate a random instance of this size")->check(CLI::Range(3, 1'000'000));
        sc->add_option("--seed", cfg.seed, "random seed");
        sc->add_option("--lo", cfg.lo, "lowest generated cost");
        sc->add_option("--hi", cfg.hi, "highest generated cost");
    };
    const std::map<std::string, Initial> initial_map{
        {"canonical", Initial::canonical}, {"greedy", Initial::greedy}, {"file", Initial::file}};
    const std::map<std::string, LabelPolicy> labels_map{{"automatic", LabelPolicy::automatic},
                                                       {"best_per_pair", LabelPolicy::best_per_pair},
                                                       {"all_paths", LabelPolicy::all_paths}};
    auto add_solver = [&](CLI::App* sc) {
        sc->add_option("--labels", cfg.search.labels, "path retention policy")
            ->transform(CLI::CheckedTransformer(labels_map, CLI::ignore_case));
        sc->add_option("--initial", cfg.initial, "initial derangement")
            ->transform(CLI::CheckedTransformer(initial_map, CLI::ignore_case));
        sc->add_option("--initial-file", cfg.initial_file, "initial derangement JSON ({\"image\": [...]})");
        sc->add_flag("--absolute", cfg.absolute, "refine D_FWABS to D_ABSOLUTE");
        sc->add_flag("--single-cycle", cfg.single_cycle, "apply one cycle per descent step");
        sc->add_option("--max-steps", cfg.max_steps, "descent step cap")->check(CLI::PositiveNumber);
        sc->add_option("--max-rounds", cfg.search.max_rounds, "search round cap (0 = none)")->check(CLI::NonNegativeNumber);
        sc->add_option("--max-nodes", cfg.search.max_nodes, "path node cap")->check(CLI::PositiveNumber);
        sc->add_option("--max-cycle-len", cfg.limits.max_cycle_len, "absolute search: longest cycle")->check(CLI::PositiveNumber);
        sc->add_option("--max-sets", cfg.limits.max_candidate_sets, "absolute search: candidate set cap")->check(CLI::PositiveNumber);
        sc->add_option("--time-budget-ms", cfg.limits.time_budget_ms, "absolute search: time budget")->check(CLI::PositiveNumber);
        sc->add_flag("--archive-paths", cfg.search.archive, "keep replaced path entries");
        sc->add_option("-o,--output", cfg.output, "output path (default stdout)");
        sc->add_flag("-v,--verbose", cfg.verbose, "progress on stderr");
    };

    auto* gen = app.add_subcommand("gen", "write a random instance");
    gen->add_option("-n", cfg.n, "size")->required()->check(CLI::Range(3, 1'000'000));
    gen->add_option("--seed", cfg.seed, "random seed");
    gen->add_option("--lo", cfg.lo, "lowest cost");
    gen->add_option("--hi", cfg.hi, "highest cost");
    gen->add_option("-o,--output", cfg.output, "output path (default stdout)");

    auto* solve_cmd = app.add_subcommand("solve", "descend to D_FWABS, optionally refine, report the bound chain");
    add_input(solve_cmd);
    add_solver(solve_cmd);
    solve_cmd->add_flag("--oracle", cfg.with_oracle, "include the exact minimum in the bound chain (n <= 9)");
    solve_cmd->add_option("--trace", cfg.trace_path, "write per-step search traces here");

    auto* oracle_cmd = app.add_subcommand("oracle", "exact minimum derangement of edges and optimal tour");
    add_input(oracle_cmd);
    oracle_cmd->add_option("-o,--output", cfg.output, "output path (default stdout)");

    std::string result_path;
    auto* check_cmd = app.add_subcommand("check", "re-verify a solve result");
    check_cmd->add_option("--result", result_path, "solve result JSON")->required();
    check_cmd->add_option("-o,--output", cfg.output, "report path (default stdout)");

    std::vector<int> sizes{50, 100, 200, 400};
    int seeds = 3;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    auto* bench = app.add_subcommand("bench", "seed sweep to CSV");
    add_solver(bench);
    bench->add_option("--sizes", sizes, "instance sizes")->check(CLI::Range(3, 1'000'000));
    bench->add_option("--seeds", seeds, "seeds per size, starting at --seed")->check(CLI::PositiveNumber);
    bench->add_option("--seed", cfg.seed, "first seed");
    bench->add_option("--lo", cfg.lo, "lowest cost");
    bench->add_option("--hi", cfg.hi, "highest cost");
    bench->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (*gen) {
            write_text(cfg.output, serialize_instance(random_instance(cfg.n, cfg.lo, cfg.hi, cfg.seed)));
            return kOk;
        }
        if (*solve_cmd) {
            Json traces;
            const Json result = solve(cfg, cfg.trace_path.empty() ? nullptr : &traces);
            write_text(cfg.output, result.dump(2) + "\n");
            if (!cfg.trace_path.empty()) write_text(cfg.trace_path, traces.dump(2) + "\n");
            if (cfg.verbose) {
                std::cerr << "d0 " << result["d0"]["cost"] << " -> d_fwabs " << result["d_fwabs"]["cost"];
                if (!result["d_absolute"].is_null()) std::cerr << " -> d_absolute " << result["d_absolute"]["cost"];
                std::cerr << '\n';
            }
            return result["flags"]["incomplete"].get<bool>() ? kCap : kOk;
        }
        if (*oracle_cmd) {
            std::string id;
            const CostMatrix m = load_input(cfg, &id, nullptr);
            Json out;
            out["instance"] = id;
            out["n"] = m.size();
            out["min_edge_derangement"] = oracle_json(oracle::brute_min_edge_derangement(m), m);
            out["optimal_tour"] = oracle_json(oracle::brute_optimal_tour(m), m);
            write_text(cfg.output, out.dump(2) + "\n");
            return kOk;
        }
        if (*check_cmd) {
            const CheckReport rep = check_result(read_json_file(result_path));
            Json out;
            out["ok"] = rep.ok();
            out["violations"] = rep.violations;
            out["notes"] = rep.notes;
            write_text(cfg.output, out.dump(2) + "\n");
            return rep.ok() ? kOk : kViolation;
        }
        if (*bench) {
            if (cfg.initial == Initial::file) throw ParseError("bench supports --initial canonical or greedy");
            if (cfg.absolute) cfg.limits.validate();
            return run_bench(cfg, sizes, seeds, threads);
        }
    } catch (const CapExceededError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kCap;
    } catch (const InconsistentStateError& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kViolation;
    } catch (const InvalidSetError& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kViolation;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

int run(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    argv.push_back(nullptr);
    return run(static_cast<int>(args.size()), argv.data());
}

} // namespace derange::cli
