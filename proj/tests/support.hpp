#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "pcenter/instance.hpp"
#include "pcenter/table.hpp"

namespace testing {

using pcenter::Distance;
using pcenter::Instance;
using pcenter::Point;

inline std::vector<Point> random_points(std::mt19937_64& rng, int n, int max_coord) {
    std::uniform_int_distribution<int> coord(0, max_coord);
    std::vector<Point> pts;
    for (int i = 0; i < n; ++i) pts.push_back({double(coord(rng)), double(coord(rng))});
    return pts;
}

inline Instance random_colocated(std::mt19937_64& rng, int n, int p, int max_coord = 100) {
    auto pts = random_points(rng, n, max_coord);
    return Instance("random", pts, pts, p);
}

// Plain Euclidean distance rounded to the nearest integer.
inline Distance ref_distance(const Point& a, const Point& b) {
    return std::llround(std::hypot(a.x - b.x, a.y - b.y));
}

inline Distance ref_radius(const Instance& inst, const std::vector<int>& open) {
    Distance worst = 0;
    for (int i = 0; i < inst.num_clients(); ++i) {
        Distance best = std::numeric_limits<Distance>::max();
        for (int j : open) best = std::min(best, ref_distance(inst.client(i), inst.site(j)));
        worst = std::max(worst, best);
    }
    return worst;
}

// Smallest radius over every site subset of size min(p, M), by bitmask.
inline Distance ref_optimum(const Instance& inst) {
    const int m = inst.num_sites();
    const int size = std::min(inst.p(), m);
    std::vector<char> pick(m, 0);
    std::fill(pick.end() - size, pick.end(), 1);
    Distance best = std::numeric_limits<Distance>::max();
    do {
        std::vector<int> open;
        for (int j = 0; j < m; ++j)
            if (pick[j]) open.push_back(j);
        best = std::min(best, ref_radius(inst, open));
    } while (std::next_permutation(pick.begin(), pick.end()));
    return best;
}

// min(max(lb, 10^a floor(d / 10^a)), ub + 1), with the power built by repeated multiplication.
inline Distance ref_round(Distance d, int alpha, Distance lb, Distance ub) {
    Distance step = 1;
    for (int k = 0; k < alpha; ++k) step *= 10;
    const Distance floored = step * static_cast<Distance>(std::floor(static_cast<double>(d) / static_cast<double>(step)));
    return std::min(std::max(lb, floored), ub + 1);
}

// Definition-level domination check over a table.
inline bool ref_dominates(const pcenter::DistanceTable& t, int by, int site) {
    if (by == site) return false;
    bool strict = false;
    for (int r = 0; r < t.num_reps(); ++r) {
        if (t.at(r, site) < t.at(r, by)) return false;
        if (t.at(r, site) > t.at(r, by)) strict = true;
    }
    return strict || site < by;
}

inline pcenter::DistanceTable random_table(std::mt19937_64& rng, int reps, int sites, int max_value) {
    std::uniform_int_distribution<int> v(0, max_value);
    pcenter::DistanceTable t(reps, sites);
    for (int r = 0; r < reps; ++r)
        for (int j = 0; j < sites; ++j) t.set(r, j, v(rng));
    return t;
}

// Minimum cover size by enumerating subsets in increasing size, or -1.
inline int ref_min_cover(const std::vector<std::vector<char>>& covers, int max_size) {
    const int rows = static_cast<int>(covers.size());
    const int cols = rows ? static_cast<int>(covers[0].size()) : 0;
    if (rows == 0) return 0;
    for (int size = 1; size <= std::min(max_size, cols); ++size) {
        std::vector<char> pick(cols, 0);
        std::fill(pick.end() - size, pick.end(), 1);
        do {
            bool all = true;
            for (int r = 0; r < rows && all; ++r) {
                bool hit = false;
                for (int c = 0; c < cols && !hit; ++c) hit = pick[c] && covers[r][c];
                all = hit;
            }
            if (all) return size;
        } while (std::next_permutation(pick.begin(), pick.end()));
    }
    return -1;
}

}  // namespace testing
