#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pcenter/bench.hpp"
#include "support.hpp"

using namespace pcenter;

namespace {

RunRecord record(std::string name, int p, RunStatus status, double seconds, double gap = 0.0, std::uint64_t seed = 1,
                 std::string flags = "default") {
    RunRecord r;
    r.instance = std::move(name);
    r.n = r.m = 10;
    r.p = p;
    r.status = status;
    r.radius = r.ub = 100;
    r.lb = status == RunStatus::Optimal ? 100 : 90;
    r.gap_percent = gap;
    r.wall_seconds = seconds;
    r.seed = seed;
    r.flags = std::move(flags);
    return r;
}

std::filesystem::path temp_dir() {
    auto dir = std::filesystem::temp_directory_path() / "pcenter_bench_test";
    std::filesystem::create_directories(dir);
    return dir;
}

void write_instance(const std::filesystem::path& path, const Instance& inst) {
    std::ofstream(path) << to_native(inst);
}

}  // namespace

TEST_CASE("csv round trip") {
    std::vector<RunRecord> recs{record("a", 2, RunStatus::Optimal, 0.125), record("b,c", 3, RunStatus::Timeout, 1.0 / 3, 7.5),
                                record("d", 5, RunStatus::Error, 0.0)};
    recs[1].flags = "no-dominations|no-rounding";
    recs[2].message = "line 4: \"bad\" token";
    recs[0].cover_probes = 123456789;
    recs[0].seed = 18446744073709551615ULL;
    std::stringstream s;
    write_csv(s, recs);
    CHECK(read_csv(s) == recs);
}

TEST_CASE("csv parse errors") {
    CHECK_THROWS_AS(parse_csv_row("a,1,2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_csv_row("a,x,1,1,OPTIMAL,1,1,1,0,0,0,0,0,1,default,"), std::invalid_argument);
    CHECK_THROWS_AS(parse_csv_row("a,1,1,1,MAYBE,1,1,1,0,0,0,0,0,1,default,"), std::invalid_argument);
    std::istringstream bad_header("instance,n\n");
    CHECK_THROWS_AS(read_csv(bad_header), std::invalid_argument);
}

TEST_CASE("flags string") {
    CHECK(flags_string(SolveParams{}) == "default");
    SolveParams p;
    p.use_local_search = false;
    p.k = 9;
    CHECK(flags_string(p) == "no-local-search|k=9");
}

TEST_CASE("manifest parsing") {
    std::istringstream in(
        "# comment\n\ninst/a.tsp 3 7\nb.json 2 1 --no-dominations --k 4 --time-limit 30  # trailing\n");
    const auto reqs = parse_manifest(in, SolveParams{}, "/data");
    REQUIRE(reqs.size() == 2);
    CHECK(reqs[0].path == "/data/inst/a.tsp");
    CHECK(reqs[0].p == 3);
    CHECK(reqs[0].params.seed == 7);
    CHECK_FALSE(reqs[1].params.use_dominations);
    CHECK(reqs[1].params.k == 4);
    CHECK(reqs[1].params.time_limit_seconds == 30.0);

    std::istringstream bad("a.tsp 3\n");
    CHECK_THROWS_AS(parse_manifest(bad), std::invalid_argument);
    std::istringstream unknown("a.tsp 3 1 --fast\n");
    CHECK_THROWS_AS(parse_manifest(unknown), std::invalid_argument);
}

TEST_CASE("run_single reports errors") {
    RunRequest req;
    req.path = "/nonexistent/instance.tsp";
    req.p = 2;
    const auto r = run_single(req);
    CHECK(r.status == RunStatus::Error);
    CHECK_FALSE(r.message.empty());

    const auto dir = temp_dir();
    std::mt19937_64 rng(61);
    write_instance(dir / "small.json", testing::random_colocated(rng, 6, 1));
    req.path = (dir / "small.json").string();
    req.p = 0;
    CHECK(run_single(req).status == RunStatus::Error);
}

TEST_CASE("batch cardinality and determinism") {
    const auto dir = temp_dir();
    std::mt19937_64 rng(62);
    const auto pa = testing::random_points(rng, 30, 100);
    const auto pb = testing::random_points(rng, 25, 100);
    const Instance a("a", pa, pa, 1);
    const Instance b("b", pb, pb, 1);
    write_instance(dir / "a.json", a);
    write_instance(dir / "b.json", b);

    std::istringstream empty("");
    const auto none = run_batch(parse_manifest(empty), 2);
    std::stringstream header_only;
    write_csv(header_only, none);
    CHECK(read_csv(header_only).empty());

    std::istringstream manifest("a.json 1 1\na.json 2 1\na.json 3 1\nb.json 1 1\nb.json 2 1\nb.json 3 1\n");
    const auto reqs = parse_manifest(manifest, SolveParams{}, dir.string());
    const auto recs = run_batch(reqs, 3);
    REQUIRE(recs.size() == 6);
    for (std::size_t i = 0; i < recs.size(); ++i) {
        CHECK(recs[i].status == RunStatus::Optimal);
        CHECK(recs[i].p == reqs[i].p);
        CHECK(recs[i].radius == testing::ref_optimum([&] {
                  Instance inst = read_instance_file(reqs[i].path);
                  inst.set_p(reqs[i].p);
                  return inst;
              }()));
    }
    CHECK(aggregate_by_instance(recs).size() == 2);
    CHECK(aggregate_by_p(recs).size() == 3);

    auto again = run_batch(reqs, 1);
    for (std::size_t i = 0; i < recs.size(); ++i) {
        again[i].wall_seconds = recs[i].wall_seconds;
        CHECK(again[i] == recs[i]);
    }
}

TEST_CASE("aggregate time only over commonly solved runs") {
    const std::vector<RunRecord> recs{
        record("x", 2, RunStatus::Optimal, 1.0, 0, 1, "default"),
        record("x", 2, RunStatus::Optimal, 3.0, 0, 1, "no-rounding"),
        record("y", 2, RunStatus::Optimal, 5.0, 0, 1, "default"),
        record("y", 2, RunStatus::Timeout, 100.0, 10.0, 1, "no-rounding"),
    };
    const auto by_p = aggregate_by_p(recs);
    REQUIRE(by_p.size() == 2);
    const Aggregate& def = by_p[0].flags == "default" ? by_p[0] : by_p[1];
    const Aggregate& nor = by_p[0].flags == "default" ? by_p[1] : by_p[0];
    CHECK(def.runs == 2);
    CHECK(def.optimal == 2);
    CHECK(def.common_solved == 1);
    CHECK(def.mean_time_seconds == doctest::Approx(1.0));
    CHECK(nor.optimal == 1);
    CHECK(nor.mean_time_seconds == doctest::Approx(3.0));
    CHECK(nor.mean_gap_percent == doctest::Approx(5.0));
}

TEST_CASE("profile of identical configurations") {
    const std::vector<RunRecord> recs{record("x", 2, RunStatus::Optimal, 1.0), record("y", 3, RunStatus::Optimal, 2.0)};
    const std::vector<std::vector<RunRecord>> configs{recs, recs};
    const std::vector<std::string> names{"a", "b"};
    for (const auto& c : performance_profile(configs, names)) {
        REQUIRE(c.points.size() == 2);
        for (const auto& pt : c.points) CHECK(pt.ratio == doctest::Approx(1.0));
        CHECK(c.points.back().fraction == doctest::Approx(1.0));
    }
}

TEST_CASE("profile of a uniformly slower configuration") {
    const std::vector<RunRecord> fast{record("x", 2, RunStatus::Optimal, 1.0), record("y", 2, RunStatus::Optimal, 4.0)};
    const std::vector<RunRecord> slow{record("x", 2, RunStatus::Optimal, 2.0), record("y", 2, RunStatus::Optimal, 8.0)};
    const std::vector<std::vector<RunRecord>> configs{fast, slow};
    const std::vector<std::string> names{"fast", "slow"};
    const auto curves = performance_profile(configs, names);
    const auto& slow_time = curves[2];
    REQUIRE(slow_time.config == "slow");
    REQUIRE(slow_time.metric == "time");
    CHECK(slow_time.points.back().ratio == doctest::Approx(2.0));
    CHECK(slow_time.points.back().fraction == doctest::Approx(1.0));
}

TEST_CASE("profile points for three configurations") {
    // Times per key (k1, k2, k3, k4); config c misses k4 by timing out.
    const std::vector<std::vector<double>> times{{1, 2, 4, 1}, {2, 1, 4, 3}, {4, 4, 1, 100}};
    std::vector<std::vector<RunRecord>> configs(3);
    for (int c = 0; c < 3; ++c)
        for (int k = 0; k < 4; ++k)
            configs[c].push_back(record("k" + std::to_string(k), 2,
                                        c == 2 && k == 3 ? RunStatus::Timeout : RunStatus::Optimal, times[c][k],
                                        c == 2 && k == 3 ? 4.0 : 0.0));
    const std::vector<std::string> names{"a", "b", "c"};
    const auto curves = performance_profile(configs, names);

    // Best per key: 1, 1, 1, 1. Ratios a: 1,2,4,1; b: 2,1,4,3; c: 4,4,1 (k4 excluded).
    auto ratios = [&](int idx) {
        std::vector<double> r;
        for (const auto& pt : curves[idx].points) r.push_back(pt.ratio);
        return r;
    };
    CHECK(ratios(0) == std::vector<double>{1, 1, 2, 4});
    CHECK(ratios(2) == std::vector<double>{1, 2, 3, 4});
    CHECK(ratios(4) == std::vector<double>{1, 4, 4});
    CHECK(curves[4].points.back().fraction == doctest::Approx(0.75));
    // Gap curve for c: (4 + 1) / (0 + 1) on k4.
    CHECK(curves[5].points.back().ratio == doctest::Approx(5.0));
}

TEST_CASE("profile key mismatch") {
    const std::vector<std::vector<RunRecord>> configs{{record("x", 2, RunStatus::Optimal, 1.0)},
                                                      {record("y", 2, RunStatus::Optimal, 1.0)}};
    const std::vector<std::string> names{"a", "b"};
    CHECK_THROWS_AS(performance_profile(configs, names), std::invalid_argument);
}
