#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "pcenter/bench.hpp"

namespace {

using namespace pcenter;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitTimeout = 2;

void add_solver_flags(CLI::App& cmd, SolveParams& params) {
    cmd.add_option("--k", params.k, "Number of clusters (default p + 2)")->check(CLI::NonNegativeNumber);
    cmd.add_option("--seed", params.seed, "Seed for k-means and local search");
    cmd.add_option("--time-limit", params.time_limit_seconds, "Time limit in seconds")->check(CLI::PositiveNumber);
    cmd.add_flag("--no-dominations", [&](std::int64_t) { params.use_dominations = false; }, "Keep dominated sites");
    cmd.add_flag("--no-local-search", [&](std::int64_t) { params.use_local_search = false; },
                 "Grow representatives from the subset optimum only");
    cmd.add_flag("--no-rounding", [&](std::int64_t) { params.use_rounding = false; }, "Solve with exact distances");
    cmd.add_option("--domination-cutoff", params.domination_cutoff, "Skip dominations above this many sites")
        ->check(CLI::NonNegativeNumber);
}

void print_human(const SolveResult& res, const RunRecord& rec) {
    std::cout << rec.instance << ": N=" << rec.n << " M=" << rec.m << " p=" << rec.p << '\n';
    for (const auto& it : res.stats.iterations)
        std::cout << "  alpha=" << it.alpha << " lb=" << it.lb << " ub=" << it.ub << " reps=" << it.reps
                  << " (+" << it.added << ") probes=" << it.probes << " time=" << it.seconds << "s\n";
    std::cout << "status " << to_string(rec.status) << "  radius " << rec.radius << "  lb " << rec.lb << "  ub "
              << rec.ub << "  gap " << rec.gap_percent << "%\n";
    std::cout << "time " << rec.wall_seconds << "s  peak reps " << rec.peak_reps << "  cover probes "
              << rec.cover_probes << '\n';
    std::cout << "open sites";
    for (int j : res.solution.open_sites) std::cout << ' ' << j;
    std::cout << '\n';
}

void print_json(const SolveResult& res, const RunRecord& rec) {
    nlohmann::json j;
    j["instance"] = rec.instance;
    j["n"] = rec.n;
    j["m"] = rec.m;
    j["p"] = rec.p;
    j["status"] = to_string(rec.status);
    j["radius"] = rec.radius;
    j["lb"] = rec.lb;
    j["ub"] = rec.ub;
    j["gap_percent"] = rec.gap_percent;
    j["wall_seconds"] = rec.wall_seconds;
    j["peak_reps"] = rec.peak_reps;
    j["cover_probes"] = rec.cover_probes;
    j["seed"] = rec.seed;
    j["flags"] = rec.flags;
    j["open_sites"] = res.solution.open_sites;
    auto& its = j["iterations"] = nlohmann::json::array();
    for (const auto& it : res.stats.iterations)
        its.push_back({{"alpha", it.alpha},
                       {"lb", it.lb},
                       {"ub", it.ub},
                       {"reps", it.reps},
                       {"added", it.added},
                       {"inner_iterations", it.inner_iterations},
                       {"probes", it.probes},
                       {"seconds", it.seconds}});
    std::cout << j.dump(2) << '\n';
}

int run_solve(const std::string& path, int p, const SolveParams& params, const std::string& format) {
    Instance inst = read_instance_file(path);
    inst.set_p(p);
    const SolveResult res = solve_by_rounding(inst, params);
    const RunRecord rec = make_record(inst, params, res);
    if (format == "csv") {
        write_csv(std::cout, std::span<const RunRecord>(&rec, 1));
    } else if (format == "json") {
        print_json(res, rec);
    } else {
        print_human(res, rec);
    }
    return rec.status == RunStatus::Optimal ? kExitOk : kExitTimeout;
}

int run_batch_cmd(const std::string& manifest, const std::string& out_path, const std::string& agg_path, int jobs,
                  const SolveParams& defaults) {
    std::ifstream in(manifest);
    if (!in) throw std::runtime_error("cannot open manifest " + manifest);
    const auto requests =
        parse_manifest(in, defaults, std::filesystem::path(manifest).parent_path().string());
    const auto records = run_batch(requests, jobs);

    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    write_csv(out, records);
    if (!agg_path.empty()) {
        std::ofstream agg(agg_path);
        if (!agg) throw std::runtime_error("cannot write " + agg_path);
        auto rows = aggregate_by_p(records);
        const auto by_instance = aggregate_by_instance(records);
        rows.insert(rows.end(), by_instance.begin(), by_instance.end());
        write_aggregate_csv(agg, rows);
    }

    int code = kExitOk;
    for (const auto& r : records) {
        std::cerr << r.instance << " p=" << r.p << " seed=" << r.seed << " " << r.flags << ": " << to_string(r.status);
        if (r.status == RunStatus::Error) {
            std::cerr << " (" << r.message << ")";
            code = kExitError;
        } else {
            std::cerr << " radius " << r.radius << " in " << r.wall_seconds << "s";
            if (r.status == RunStatus::Timeout && code == kExitOk) code = kExitTimeout;
        }
        std::cerr << '\n';
    }
    return code;
}

int run_profile(const std::vector<std::string>& csvs, std::vector<std::string> names, const std::string& out_path) {
    if (names.empty())
        for (const auto& c : csvs) names.push_back(std::filesystem::path(c).stem().string());
    std::vector<std::vector<RunRecord>> configs;
    for (const auto& c : csvs) {
        std::ifstream in(c);
        if (!in) throw std::runtime_error("cannot open " + c);
        configs.push_back(read_csv(in));
    }
    const auto curves = performance_profile(configs, names);
    if (out_path.empty() || out_path == "-") {
        write_profile_csv(std::cout, curves);
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot write " + out_path);
        write_profile_csv(out, curves);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact p-center solver"};
    app.require_subcommand(1);

    SolveParams params;
    std::string path, format = "human";
    int p = 0;
    auto* solve = app.add_subcommand("solve", "Solve one instance (TSPLib EUC_2D or JSON)");
    solve->add_option("instance", path, "Instance file")->required()->check(CLI::ExistingFile);
    solve->add_option("--p", p, "Number of centers")->required()->check(CLI::Range(1, 1 << 30));
    solve->add_option("--format", format, "Output format")->check(CLI::IsMember({"human", "csv", "json"}));
    add_solver_flags(*solve, params);

    std::string manifest, out_path = "runs.csv", agg_path;
    int jobs = 1;
    SolveParams batch_defaults;
    auto* batch = app.add_subcommand("batch", "Run every line of a manifest: `path p seed [flags...]`");
    batch->add_option("manifest", manifest, "Manifest file")->required()->check(CLI::ExistingFile);
    batch->add_option("--out", out_path, "Per-run CSV");
    batch->add_option("--aggregate", agg_path, "Aggregate CSV grouped by p and by instance");
    batch->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    batch->add_option("--time-limit", batch_defaults.time_limit_seconds, "Default time limit in seconds")
        ->check(CLI::PositiveNumber);

    std::vector<std::string> csvs, names;
    std::string profile_out;
    auto* profile = app.add_subcommand("profile", "Performance profiles from per-configuration run CSVs");
    profile->add_option("csv", csvs, "Run CSVs, one per configuration")->required()->expected(2, -1);
    profile->add_option("--names", names, "Configuration names")->delimiter(',');
    profile->add_option("--out", profile_out, "Output CSV (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitError;
    }

    try {
        if (*solve) return run_solve(path, p, params, format);
        if (*batch) return run_batch_cmd(manifest, out_path, agg_path, jobs, batch_defaults);
        if (*profile) return run_profile(csvs, names, profile_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
