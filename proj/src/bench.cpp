#include "pcenter/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <filesystem>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace pcenter {

namespace {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

template <typename T>
T parse_number(std::string_view s, std::string_view field) {
    T v{};
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::invalid_argument("bad value for " + std::string(field) + ": '" + std::string(s) + "'");
    return v;
}

std::string quote(std::string_view s) {
    if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

using Key = std::tuple<std::string, int, std::uint64_t>;

Key key_of(const RunRecord& r) { return {r.instance, r.p, r.seed}; }

std::vector<Aggregate> aggregate(std::span<const RunRecord> records, const std::string& group_by,
                                 std::string (*group_of)(const RunRecord&)) {
    std::map<Key, bool> all_solved;
    for (const auto& r : records) {
        auto [it, fresh] = all_solved.emplace(key_of(r), true);
        it->second = it->second && r.status == RunStatus::Optimal;
    }

    std::map<std::pair<std::string, std::string>, Aggregate> groups;
    std::map<std::pair<std::string, std::string>, double> gap_sum, time_sum;
    for (const auto& r : records) {
        const auto id = std::make_pair(group_of(r), r.flags);
        Aggregate& a = groups[id];
        a.group_by = group_by;
        a.group = id.first;
        a.flags = id.second;
        ++a.runs;
        if (r.status == RunStatus::Optimal) ++a.optimal;
        if (r.status == RunStatus::Error) {
            ++a.errors;
            continue;
        }
        gap_sum[id] += r.gap_percent;
        if (all_solved[key_of(r)]) {
            ++a.common_solved;
            time_sum[id] += r.wall_seconds;
        }
    }
    std::vector<Aggregate> out;
    for (auto& [id, a] : groups) {
        const int scored = a.runs - a.errors;
        a.mean_gap_percent = scored > 0 ? gap_sum[id] / scored : 0.0;
        a.mean_time_seconds = a.common_solved > 0 ? time_sum[id] / a.common_solved : 0.0;
        out.push_back(a);
    }
    // Numeric order for p groups.
    if (group_by == "p")
        std::stable_sort(out.begin(), out.end(), [](const Aggregate& x, const Aggregate& y) {
            return std::stoi(x.group) < std::stoi(y.group);
        });
    return out;
}

std::vector<ProfilePoint> curve(std::vector<double> ratios, std::size_t keys) {
    std::sort(ratios.begin(), ratios.end());
    std::vector<ProfilePoint> out;
    for (std::size_t i = 0; i < ratios.size(); ++i)
        out.push_back({ratios[i], static_cast<double>(i + 1) / static_cast<double>(keys)});
    return out;
}

}  // namespace

std::string_view to_string(RunStatus s) {
    switch (s) {
        case RunStatus::Optimal: return "OPTIMAL";
        case RunStatus::Timeout: return "TIMEOUT";
        case RunStatus::Error: return "ERROR";
    }
    return "ERROR";
}

RunStatus parse_run_status(std::string_view s) {
    if (s == "OPTIMAL") return RunStatus::Optimal;
    if (s == "TIMEOUT") return RunStatus::Timeout;
    if (s == "ERROR") return RunStatus::Error;
    throw std::invalid_argument("unknown run status '" + std::string(s) + "'");
}

std::string flags_string(const SolveParams& params) {
    const SolveParams defaults;
    std::vector<std::string> parts;
    if (!params.use_dominations) parts.emplace_back("no-dominations");
    if (!params.use_local_search) parts.emplace_back("no-local-search");
    if (!params.use_rounding) parts.emplace_back("no-rounding");
    if (params.k != defaults.k) parts.push_back("k=" + std::to_string(params.k));
    if (params.domination_cutoff != defaults.domination_cutoff)
        parts.push_back("domination-cutoff=" + std::to_string(params.domination_cutoff));
    if (parts.empty()) return "default";
    std::string out = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) out += "|" + parts[i];
    return out;
}

RunRecord make_record(const Instance& inst, const SolveParams& params, const SolveResult& result) {
    RunRecord r;
    r.instance = inst.name();
    r.n = inst.num_clients();
    r.m = inst.num_sites();
    r.p = inst.p();
    r.status = result.status == SolveStatus::Optimal ? RunStatus::Optimal : RunStatus::Timeout;
    r.radius = result.ub;
    r.lb = result.lb;
    r.ub = result.ub;
    r.gap_percent = result.ub > 0 ? 100.0 * static_cast<double>(result.ub - result.lb) / static_cast<double>(result.ub) : 0.0;
    r.wall_seconds = result.seconds;
    r.peak_reps = result.stats.peak_reps;
    r.outer_iterations = static_cast<int>(result.stats.iterations.size());
    r.cover_probes = result.stats.cover_probes;
    r.seed = params.seed;
    r.flags = flags_string(params);
    return r;
}

const std::vector<std::string>& run_csv_header() {
    static const std::vector<std::string> header{
        "instance", "n",           "m",           "p",     "status", "radius", "lb",      "ub",
        "gap_percent", "wall_seconds", "peak_reps", "outer_iterations", "cover_probes", "seed", "flags", "message"};
    return header;
}

std::string to_csv_row(const RunRecord& r) {
    std::ostringstream s;
    s << quote(r.instance) << ',' << r.n << ',' << r.m << ',' << r.p << ',' << to_string(r.status) << ','
      << r.radius << ',' << r.lb << ',' << r.ub << ',' << format_double(r.gap_percent) << ','
      << format_double(r.wall_seconds) << ',' << r.peak_reps << ',' << r.outer_iterations << ',' << r.cover_probes
      << ',' << r.seed << ',' << quote(r.flags) << ',' << quote(r.message);
    return s.str();
}

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(cur));
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    if (quoted) throw std::invalid_argument("unterminated quote in CSV line");
    out.push_back(std::move(cur));
    return out;
}

RunRecord parse_csv_row(std::string_view line) {
    const auto f = split_csv_line(line);
    if (f.size() != run_csv_header().size())
        throw std::invalid_argument("expected " + std::to_string(run_csv_header().size()) + " CSV fields, got " +
                                    std::to_string(f.size()));
    RunRecord r;
    r.instance = f[0];
    r.n = parse_number<int>(f[1], "n");
    r.m = parse_number<int>(f[2], "m");
    r.p = parse_number<int>(f[3], "p");
    r.status = parse_run_status(f[4]);
    r.radius = parse_number<Distance>(f[5], "radius");
    r.lb = parse_number<Distance>(f[6], "lb");
    r.ub = parse_number<Distance>(f[7], "ub");
    r.gap_percent = parse_number<double>(f[8], "gap_percent");
    r.wall_seconds = parse_number<double>(f[9], "wall_seconds");
    r.peak_reps = parse_number<int>(f[10], "peak_reps");
    r.outer_iterations = parse_number<int>(f[11], "outer_iterations");
    r.cover_probes = parse_number<long>(f[12], "cover_probes");
    r.seed = parse_number<std::uint64_t>(f[13], "seed");
    r.flags = f[14];
    r.message = f[15];
    return r;
}

void write_csv(std::ostream& out, std::span<const RunRecord> records) {
    const auto& h = run_csv_header();
    for (std::size_t i = 0; i < h.size(); ++i) out << (i ? "," : "") << h[i];
    out << '\n';
    for (const auto& r : records) out << to_csv_row(r) << '\n';
}

std::vector<RunRecord> read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty CSV");
    if (split_csv_line(line) != run_csv_header()) throw std::invalid_argument("unexpected CSV header");
    std::vector<RunRecord> out;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        out.push_back(parse_csv_row(line));
    }
    return out;
}

RunRecord run_single(const RunRequest& req) {
    RunRecord r;
    r.instance = std::filesystem::path(req.path).stem().string();
    r.p = req.p;
    r.seed = req.params.seed;
    r.flags = flags_string(req.params);
    try {
        Instance inst = read_instance_file(req.path);
        r.instance = inst.name();
        r.n = inst.num_clients();
        r.m = inst.num_sites();
        inst.set_p(req.p);
        return make_record(inst, req.params, solve_by_rounding(inst, req.params));
    } catch (const std::exception& e) {
        r.status = RunStatus::Error;
        r.message = e.what();
        return r;
    }
}

std::vector<RunRequest> parse_manifest(std::istream& in, const SolveParams& defaults, const std::string& base_dir) {
    std::vector<RunRequest> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream words(line);
        std::vector<std::string> w;
        for (std::string t; words >> t;) w.push_back(t);
        if (w.empty()) continue;
        const std::string where = "manifest line " + std::to_string(line_no) + ": ";
        if (w.size() < 3) throw std::invalid_argument(where + "expected `path p seed [flags...]`");

        RunRequest req;
        req.params = defaults;
        req.path = w[0];
        if (!base_dir.empty() && std::filesystem::path(req.path).is_relative())
            req.path = (std::filesystem::path(base_dir) / req.path).string();
        try {
            req.p = parse_number<int>(w[1], "p");
            req.params.seed = parse_number<std::uint64_t>(w[2], "seed");
            for (std::size_t i = 3; i < w.size(); ++i) {
                const std::string& f = w[i];
                auto value = [&]() -> const std::string& {
                    if (i + 1 >= w.size()) throw std::invalid_argument(f + " needs a value");
                    return w[++i];
                };
                if (f == "--no-dominations") req.params.use_dominations = false;
                else if (f == "--no-local-search") req.params.use_local_search = false;
                else if (f == "--no-rounding") req.params.use_rounding = false;
                else if (f == "--k") req.params.k = parse_number<int>(value(), "k");
                else if (f == "--time-limit") req.params.time_limit_seconds = parse_number<double>(value(), "time-limit");
                else if (f == "--domination-cutoff")
                    req.params.domination_cutoff = parse_number<int>(value(), "domination-cutoff");
                else throw std::invalid_argument("unknown flag " + f);
            }
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(where + e.what());
        }
        out.push_back(std::move(req));
    }
    return out;
}

std::vector<RunRecord> run_batch(std::span<const RunRequest> requests, int workers) {
    std::vector<RunRecord> out(requests.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < requests.size(); i = next++) out[i] = run_single(requests[i]);
    };
    const int n = std::clamp<int>(workers, 1, static_cast<int>(std::max<std::size_t>(requests.size(), 1)));
    std::vector<std::thread> pool;
    for (int t = 1; t < n; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    return out;
}

std::vector<Aggregate> aggregate_by_p(std::span<const RunRecord> records) {
    return aggregate(records, "p", [](const RunRecord& r) { return std::to_string(r.p); });
}

std::vector<Aggregate> aggregate_by_instance(std::span<const RunRecord> records) {
    return aggregate(records, "instance", [](const RunRecord& r) { return r.instance; });
}

const std::vector<std::string>& aggregate_csv_header() {
    static const std::vector<std::string> header{"group_by", "group",        "flags",         "runs",
                                                 "optimal",  "errors",       "mean_gap_percent", "common_solved",
                                                 "mean_time_seconds"};
    return header;
}

void write_aggregate_csv(std::ostream& out, std::span<const Aggregate> rows) {
    const auto& h = aggregate_csv_header();
    for (std::size_t i = 0; i < h.size(); ++i) out << (i ? "," : "") << h[i];
    out << '\n';
    for (const auto& a : rows)
        out << a.group_by << ',' << quote(a.group) << ',' << quote(a.flags) << ',' << a.runs << ',' << a.optimal << ','
            << a.errors << ',' << format_double(a.mean_gap_percent) << ',' << a.common_solved << ','
            << format_double(a.mean_time_seconds) << '\n';
}

std::vector<ProfileCurve> performance_profile(std::span<const std::vector<RunRecord>> configs,
                                              std::span<const std::string> names) {
    if (configs.size() != names.size()) throw std::invalid_argument("one name per configuration is required");
    if (configs.size() < 2) throw std::invalid_argument("a profile needs at least two configurations");

    std::vector<std::map<Key, const RunRecord*>> by_key(configs.size());
    for (std::size_t c = 0; c < configs.size(); ++c)
        for (const auto& r : configs[c])
            if (!by_key[c].emplace(key_of(r), &r).second)
                throw std::invalid_argument(names[c] + ": duplicate run for " + r.instance + " p=" + std::to_string(r.p));
    std::set<Key> keys;
    for (const auto& m : by_key)
        for (const auto& [k, r] : m) keys.insert(k);
    for (std::size_t c = 0; c < configs.size(); ++c)
        for (const auto& k : keys)
            if (!by_key[c].count(k))
                throw std::invalid_argument(names[c] + ": no run for " + std::get<0>(k) + " p=" +
                                            std::to_string(std::get<1>(k)) + " seed=" + std::to_string(std::get<2>(k)));

    std::vector<std::vector<double>> time_ratios(configs.size()), gap_ratios(configs.size());
    for (const auto& k : keys) {
        double best_time = -1.0, best_gap = -1.0;
        for (const auto& m : by_key) {
            const RunRecord& r = *m.at(k);
            if (r.status == RunStatus::Optimal) {
                const double t = std::max(r.wall_seconds, kMinProfileSeconds);
                best_time = best_time < 0 ? t : std::min(best_time, t);
            }
            if (r.status != RunStatus::Error) best_gap = best_gap < 0 ? r.gap_percent : std::min(best_gap, r.gap_percent);
        }
        for (std::size_t c = 0; c < configs.size(); ++c) {
            const RunRecord& r = *by_key[c].at(k);
            if (r.status == RunStatus::Optimal)
                time_ratios[c].push_back(std::max(r.wall_seconds, kMinProfileSeconds) / best_time);
            if (r.status != RunStatus::Error) gap_ratios[c].push_back((r.gap_percent + 1.0) / (best_gap + 1.0));
        }
    }

    std::vector<ProfileCurve> out;
    for (std::size_t c = 0; c < configs.size(); ++c) {
        out.push_back({names[c], "time", curve(time_ratios[c], keys.size())});
        out.push_back({names[c], "gap", curve(gap_ratios[c], keys.size())});
    }
    return out;
}

void write_profile_csv(std::ostream& out, std::span<const ProfileCurve> curves) {
    out << "config,metric,percent,ratio\n";
    for (const auto& c : curves)
        for (const auto& pt : c.points)
            out << quote(c.config) << ',' << c.metric << ',' << format_double(100.0 * pt.fraction) << ','
                << format_double(pt.ratio) << '\n';
}

}  // namespace pcenter
