#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pcenter/engine.hpp"

namespace pcenter {

enum class RunStatus { Optimal, Timeout, Error };

std::string_view to_string(RunStatus s);
RunStatus parse_run_status(std::string_view s);

struct RunRecord {
    std::string instance;
    int n = 0;
    int m = 0;
    int p = 0;
    RunStatus status = RunStatus::Error;
    Distance radius = 0;
    Distance lb = 0;
    Distance ub = 0;
    double gap_percent = 0.0;  // 100 (ub - lb) / ub, 0 when ub is 0
    double wall_seconds = 0.0;
    int peak_reps = 0;
    int outer_iterations = 0;
    long cover_probes = 0;
    std::uint64_t seed = 0;
    std::string flags;    // "default" or e.g. "no-dominations|no-rounding"
    std::string message;  // error text, empty otherwise

    bool operator==(const RunRecord&) const = default;
};

/// Feature flags that differ from the defaults, '|'-joined.
std::string flags_string(const SolveParams& params);

RunRecord make_record(const Instance& inst, const SolveParams& params, const SolveResult& result);

// ---- CSV ---------------------------------------------------------------------

const std::vector<std::string>& run_csv_header();
std::string to_csv_row(const RunRecord& r);
/// Throws std::invalid_argument on a malformed row.
RunRecord parse_csv_row(std::string_view line);
void write_csv(std::ostream& out, std::span<const RunRecord> records);
/// Expects the header line first.
std::vector<RunRecord> read_csv(std::istream& in);

/// Splits one CSV line, honouring double quotes.
std::vector<std::string> split_csv_line(std::string_view line);

// ---- runs --------------------------------------------------------------------

struct RunRequest {
    std::string path;
    SolveParams params;
    int p = 0;
};

/// Never throws: I/O, parse and argument errors become Error records.
RunRecord run_single(const RunRequest& req);

/// One request per non-empty, non-comment line: `path p seed [flags...]`.
/// Flags: --no-dominations, --no-local-search, --no-rounding, --k N,
/// --time-limit S, --domination-cutoff N. Relative paths resolve against
/// `base_dir` when it is non-empty.
std::vector<RunRequest> parse_manifest(std::istream& in, const SolveParams& defaults = {},
                                       const std::string& base_dir = {});

/// Runs every request on `workers` threads; records come back in request order.
std::vector<RunRecord> run_batch(std::span<const RunRequest> requests, int workers = 1);

struct Aggregate {
    std::string group_by;  // "p" or "instance"
    std::string group;
    std::string flags;
    int runs = 0;
    int optimal = 0;
    int errors = 0;
    double mean_gap_percent = 0.0;   // over non-error runs
    int common_solved = 0;           // runs whose key every configuration solved
    double mean_time_seconds = 0.0;  // over the common_solved runs
};

/// Groups by p or by instance, and by flags within a group. A run counts
/// toward mean time only when every configuration in `records` solved its
/// (instance, p, seed) to optimality.
std::vector<Aggregate> aggregate_by_p(std::span<const RunRecord> records);
std::vector<Aggregate> aggregate_by_instance(std::span<const RunRecord> records);

const std::vector<std::string>& aggregate_csv_header();
void write_aggregate_csv(std::ostream& out, std::span<const Aggregate> rows);

// ---- performance profiles ----------------------------------------------------

struct ProfilePoint {
    double ratio = 1.0;     // to the best configuration
    double fraction = 0.0;  // cumulative share of keys, in (0, 1]
};

struct ProfileCurve {
    std::string config;
    std::string metric;  // "time" or "gap"
    std::vector<ProfilePoint> points;
};

inline constexpr double kMinProfileSeconds = 1e-6;

/// One time curve and one gap curve per configuration. Runs are matched on
/// (instance, p, seed); a key missing from any configuration throws.
/// Time ratios only count optimal runs. Gap ratios compare (gap + 1).
std::vector<ProfileCurve> performance_profile(std::span<const std::vector<RunRecord>> configs,
                                              std::span<const std::string> names);

/// Columns: config, metric, percent, ratio.
void write_profile_csv(std::ostream& out, std::span<const ProfileCurve> curves);

}  // namespace pcenter
