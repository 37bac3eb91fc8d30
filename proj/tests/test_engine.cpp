#include <doctest.h>

#include <numeric>

#include "pcenter/engine.hpp"
#include "support.hpp"

using namespace pcenter;

TEST_CASE("initial solution") {
    std::mt19937_64 rng(51);
    for (int t = 0; t < 20; ++t) {
        const Instance inst = testing::random_colocated(rng, 20, 1 + t % 4);
        const std::vector<int> reps{0, 3, 6, 9, 12};
        const Solution s = initial_solution(inst, reps);
        REQUIRE(s.true_radius.has_value());
        CHECK(*s.true_radius == testing::ref_radius(inst, s.open_sites));
        CHECK(*s.true_radius >= testing::ref_optimum(inst));
        CHECK(static_cast<int>(s.open_sites.size()) <= inst.p());
        for (int j : s.open_sites) CHECK(std::find(reps.begin(), reps.end(), j) != reps.end());
    }
}

TEST_CASE("initial solution with separate sites uses the nearest site") {
    const Instance inst("sep", {{0, 0}, {10, 0}}, {{1, 0}, {9, 0}, {50, 50}}, 2);
    const Solution s = initial_solution(inst, std::vector<int>{0, 1});
    CHECK(s.open_sites == std::vector<int>{0, 1});
    CHECK(*s.true_radius == 1);

    const Instance single("single", {{3, 4}}, {{0, 0}, {30, 40}}, 1);
    CHECK(*initial_solution(single, std::vector<int>{0}).true_radius == 5);
}

TEST_CASE("zero radius short circuit") {
    const std::vector<Point> pts{{0, 0}, {5, 5}, {9, 1}};
    const Instance inst("tiny", pts, pts, 3);
    const auto res = solve_by_rounding(inst, SolveParams{});
    CHECK(res.status == SolveStatus::Optimal);
    CHECK(res.ub == 0);
    CHECK(res.lb == 0);
    CHECK(res.stats.iterations.empty());
}

TEST_CASE("solve_pcp_alpha with every client a representative") {
    std::mt19937_64 rng(52);
    const Instance inst = testing::random_colocated(rng, 25, 3);
    std::vector<int> all(25);
    std::iota(all.begin(), all.end(), 0);
    const auto clustering = kmeans(inst, 5, 1);
    SolveState state(inst, all);
    state.incumbent = initial_solution(inst, all);
    state.ub = *state.incumbent.true_radius;
    state.alpha = 0;
    const auto res = solve_pcp_alpha(inst, state, clustering, SolveParams{});
    CHECK(res.rounded_radius == testing::ref_optimum(inst));
    CHECK(state.reps().size() == 25);
}

TEST_CASE("rounding solve equals the brute force optimum") {
    std::mt19937_64 rng(53);
    for (int t = 0; t < 60; ++t) {
        const int n = 5 + static_cast<int>(rng() % 26);
        const int p = 1 + static_cast<int>(rng() % 4);
        const Instance inst = testing::random_colocated(rng, n, p, t % 2 ? 100 : 5000);
        SolveParams params;
        params.seed = t;
        const auto res = solve_by_rounding(inst, params);
        const Distance opt = testing::ref_optimum(inst);
        CHECK(res.status == SolveStatus::Optimal);
        CHECK(res.ub == opt);
        CHECK(res.lb == opt);
        CHECK(testing::ref_radius(inst, res.solution.open_sites) == opt);
        for (const auto& it : res.stats.iterations) {
            CHECK(it.lb <= opt);
            CHECK(it.ub >= opt);
            CHECK(it.ub - it.lb <= pow10(it.alpha));
        }
    }
}

TEST_CASE("representatives only grow") {
    std::mt19937_64 rng(54);
    const Instance inst = testing::random_colocated(rng, 200, 5, 10000);
    const auto res = solve_by_rounding(inst, SolveParams{});
    int prev = res.stats.initial_reps;
    for (const auto& it : res.stats.iterations) {
        CHECK(it.reps >= prev);
        CHECK(it.reps <= 200);
        prev = it.reps;
    }
}

TEST_CASE("ablations agree") {
    std::mt19937_64 rng(55);
    for (int t = 0; t < 15; ++t) {
        const Instance inst = testing::random_colocated(rng, 60, 2 + t % 4, 10000);
        const Distance base = solve_by_rounding(inst, SolveParams{}).ub;
        SolveParams a, b, c;
        a.use_dominations = false;
        b.use_local_search = false;
        c.use_rounding = false;
        CHECK(solve_by_rounding(inst, a).ub == base);
        CHECK(solve_by_rounding(inst, b).ub == base);
        CHECK(solve_by_rounding(inst, c).ub == base);
    }
}

TEST_CASE("time limit reports a valid gap") {
    std::mt19937_64 rng(56);
    const Instance inst = testing::random_colocated(rng, 1500, 12, 100000);
    SolveParams params;
    params.time_limit_seconds = 0.05;
    const auto res = solve_by_rounding(inst, params);
    CHECK(res.status == SolveStatus::TimeLimit);
    CHECK(res.lb <= res.ub);
    CHECK(testing::ref_radius(inst, res.solution.open_sites) == res.ub);
}

TEST_CASE("non-colocated sites") {
    std::mt19937_64 rng(57);
    for (int t = 0; t < 20; ++t) {
        const auto clients = testing::random_points(rng, 12 + t % 8, 100);
        const auto sites = testing::random_points(rng, 6 + t % 6, 100);
        const Instance inst("split", clients, sites, 1 + t % 3);
        const auto res = solve_by_rounding(inst, SolveParams{});
        CHECK(res.ub == testing::ref_optimum(inst));
    }
}
