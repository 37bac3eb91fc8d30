#include <doctest.h>

#include <numeric>

#include "pcenter/covering.hpp"
#include "pcenter/lp.hpp"
#include "support.hpp"

using namespace pcenter;

namespace {

CoverMatrix matrix_of(const std::vector<std::vector<char>>& covers) {
    CoverMatrix m(static_cast<int>(covers.size()), covers.empty() ? 0 : static_cast<int>(covers[0].size()));
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
            if (covers[r][c]) m.set(r, c);
    return m;
}

std::vector<std::vector<char>> random_covers(std::mt19937_64& rng, int rows, int cols, double density) {
    std::bernoulli_distribution bit(density);
    std::vector<std::vector<char>> covers(rows, std::vector<char>(cols, 0));
    for (auto& row : covers) {
        for (auto& v : row) v = bit(rng);
        row[rng() % cols] = 1;
    }
    return covers;
}

bool is_cover(const CoverMatrix& m, const std::vector<int>& cols) {
    for (int r = 0; r < m.rows(); ++r) {
        bool hit = false;
        for (int c : cols) hit = hit || m.covers(r, c);
        if (!hit) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("simplex on a small packing problem") {
    // max x + y s.t. x + 2y <= 4, 3x + y <= 6.
    lp::Matrix a(2, 2);
    a(0, 0) = 1;
    a(0, 1) = 2;
    a(1, 0) = 3;
    a(1, 1) = 1;
    const auto res = lp::maximize(a, std::vector<double>{4, 6}, std::vector<double>{1, 1});
    REQUIRE(res.status == lp::Status::Optimal);
    CHECK(res.value == doctest::Approx(2.8));
    CHECK(res.primal[0] == doctest::Approx(1.6));
    CHECK(res.primal[1] == doctest::Approx(1.2));
    CHECK(res.dual[0] == doctest::Approx(0.4));
    CHECK(res.dual[1] == doctest::Approx(0.2));
}

TEST_CASE("simplex detects unboundedness") {
    lp::Matrix a(1, 2);
    a(0, 0) = 1;
    a(0, 1) = -1;
    const auto res = lp::maximize(a, std::vector<double>{1}, std::vector<double>{0, 1});
    CHECK(res.status == lp::Status::Unbounded);
}

TEST_CASE("cover LP values") {
    CHECK(solve_set_cover_lp(matrix_of({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})).fractional_value == doctest::Approx(3));
    CHECK(solve_set_cover_lp(matrix_of({{0, 1}, {0, 1}, {1, 1}})).fractional_value == doctest::Approx(1));
    // Rows {1,2}, {2,3}, {1,3}: the odd cycle.
    const auto cycle = solve_set_cover_lp(matrix_of({{1, 1, 0}, {0, 1, 1}, {1, 0, 1}}));
    CHECK(cycle.fractional_value == doctest::Approx(1.5));
    CHECK(cycle.status == CoverStatus::CoverFound);
    CHECK(solve_set_cover_lp(matrix_of({{1, 1, 0}, {0, 1, 1}, {1, 0, 1}}), 1).status == CoverStatus::ProvedExceedsP);
}

TEST_CASE("cover LP throws on an uncoverable row") {
    CHECK_THROWS_AS(solve_set_cover_lp(matrix_of({{1, 0}, {0, 0}})), std::invalid_argument);
    CHECK_THROWS_AS(solve_set_cover_exact(matrix_of({{1, 0}, {0, 0}}), 2), std::invalid_argument);
}

TEST_CASE("exact cover basics") {
    const auto all = solve_set_cover_exact(matrix_of({{0, 1, 0}, {0, 1, 1}, {1, 1, 0}}), 1);
    CHECK(all.status == CoverStatus::CoverFound);
    CHECK(all.chosen == std::vector<int>{1});

    const auto disjoint = matrix_of({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
    const auto short_by_one = solve_set_cover_exact(disjoint, 3);
    CHECK(short_by_one.status == CoverStatus::ProvedExceedsP);
    CHECK(short_by_one.certificate != Certificate::None);
    CHECK(solve_set_cover_exact(disjoint, 4).status == CoverStatus::CoverFound);
}

TEST_CASE("exact cover matches enumeration") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 300; ++t) {
        const int rows = 1 + static_cast<int>(rng() % 12);
        const int cols = 1 + static_cast<int>(rng() % 18);
        const int p = 1 + static_cast<int>(rng() % 4);
        const auto covers = random_covers(rng, rows, cols, 0.1 + 0.05 * (t % 6));
        const auto m = matrix_of(covers);
        const int best = testing::ref_min_cover(covers, cols);
        const auto res = solve_set_cover_exact(m, p);
        CHECK((res.status == CoverStatus::CoverFound) == (best <= p));
        if (res.status == CoverStatus::CoverFound) {
            CHECK(static_cast<int>(res.chosen.size()) <= p);
            CHECK(is_cover(m, res.chosen));
        }
        CHECK(solve_set_cover_lp(m).fractional_value <= best + 1e-6);
    }
}

TEST_CASE("coverage system distinct values") {
    const auto t = DistanceTable::from_rows(std::vector<std::vector<DistanceTable::Value>>{{4, 9, 4}, {2, 9, 7}}, 3);
    const auto sys = make_coverage_system(t, {2, 0});
    CHECK(sys.cols == std::vector<int>{0, 2});
    CHECK(sys.distinct == std::vector<Distance>{4, 7});
    const auto m = sys.at_threshold(4);
    CHECK(m.covers(0, 0));
    CHECK(m.covers(1, 0));
    CHECK(m.covers(0, 1));
    CHECK_FALSE(m.covers(1, 1));
}

TEST_CASE("binary search with one value") {
    const auto t = DistanceTable::from_rows(std::vector<std::vector<DistanceTable::Value>>{{5, 5}}, 2);
    const auto sys = make_coverage_system(t, {0, 1});
    const auto r = binary_search_radius(sys, 1, SearchMode::Integer, true);
    CHECK(r.threshold == 5);
    CHECK(r.probes == 1);
    CHECK(r.sites.size() == 1);
}

TEST_CASE("binary search equals brute force on full systems") {
    std::mt19937_64 rng(32);
    for (int t = 0; t < 40; ++t) {
        const int p = 1 + t % 4;
        const Instance inst = testing::random_colocated(rng, 15, p);
        std::vector<std::vector<DistanceTable::Value>> rows(15, std::vector<DistanceTable::Value>(15));
        for (int i = 0; i < 15; ++i)
            for (int j = 0; j < 15; ++j) rows[i][j] = static_cast<DistanceTable::Value>(distance(inst, i, j));
        const auto table = DistanceTable::from_rows(rows, 15);
        std::vector<int> cols(15);
        std::iota(cols.begin(), cols.end(), 0);
        const auto sys = make_coverage_system(table, cols);

        const auto exact = binary_search_radius(sys, p, SearchMode::Integer, t % 2 == 0);
        CHECK(exact.threshold == testing::ref_optimum(inst));
        CHECK(static_cast<int>(exact.sites.size()) == p);
        CHECK(radius(inst, exact.sites) == exact.threshold);

        const auto relaxed = binary_search_radius(sys, p, SearchMode::Relaxed, t % 2 == 1);
        CHECK(relaxed.threshold <= exact.threshold);
        CHECK(relaxed.weights.size() == cols.size());
    }
}

TEST_CASE("exact solver honours the deadline") {
    std::mt19937_64 rng(33);
    const auto covers = random_covers(rng, 60, 60, 0.08);
    CHECK_THROWS_AS(solve_set_cover_exact(matrix_of(covers), 5, Deadline(0.0)), TimeLimitReached);
}
