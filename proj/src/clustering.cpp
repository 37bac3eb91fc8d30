#include "pcenter/clustering.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <stdexcept>

namespace pcenter {

namespace {

double sq_dist(const Point& a, const Point& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

std::vector<Point> seed_plus_plus(std::span<const Point> pts, int k, std::mt19937_64& rng) {
    const int n = static_cast<int>(pts.size());
    std::vector<Point> centers;
    centers.reserve(k);
    std::vector<bool> chosen(n, false);
    std::vector<double> d2(n, std::numeric_limits<double>::max());

    int first = static_cast<int>(std::uniform_int_distribution<int>(0, n - 1)(rng));
    chosen[first] = true;
    centers.push_back(pts[first]);
    while (static_cast<int>(centers.size()) < k) {
        double total = 0.0;
        for (int i = 0; i < n; ++i) {
            d2[i] = std::min(d2[i], sq_dist(pts[i], centers.back()));
            if (!chosen[i]) total += d2[i];
        }
        int pick = -1;
        if (total > 0.0) {
            double r = std::uniform_real_distribution<double>(0.0, total)(rng);
            for (int i = 0; i < n; ++i) {
                if (chosen[i]) continue;
                pick = i;
                r -= d2[i];
                if (r < 0.0 && d2[i] > 0.0) break;
            }
        } else {
            // Only duplicates of existing centers remain.
            std::vector<int> free;
            for (int i = 0; i < n; ++i)
                if (!chosen[i]) free.push_back(i);
            pick = free[std::uniform_int_distribution<std::size_t>(0, free.size() - 1)(rng)];
        }
        chosen[pick] = true;
        centers.push_back(pts[pick]);
    }
    return centers;
}

void recompute_centroids(std::span<const Point> pts, const std::vector<int>& assignment, std::vector<Point>& centroids,
                         std::vector<int>& sizes) {
    const int k = static_cast<int>(centroids.size());
    std::vector<double> sx(k, 0.0), sy(k, 0.0);
    sizes.assign(k, 0);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        sx[assignment[i]] += pts[i].x;
        sy[assignment[i]] += pts[i].y;
        ++sizes[assignment[i]];
    }
    for (int c = 0; c < k; ++c)
        if (sizes[c] > 0) centroids[c] = Point{sx[c] / sizes[c], sy[c] / sizes[c]};
}

// Moves the client farthest from its centroid (taken from a cluster with at
// least two members) into each empty cluster. Returns true if anything moved.
bool repair_empty(std::span<const Point> pts, std::vector<int>& assignment, std::vector<Point>& centroids,
                  std::vector<int>& sizes) {
    bool moved = false;
    const int k = static_cast<int>(centroids.size());
    for (int c = 0; c < k; ++c) {
        if (sizes[c] > 0) continue;
        int far = -1;
        double far_d = -1.0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (sizes[assignment[i]] < 2) continue;
            const double d = sq_dist(pts[i], centroids[assignment[i]]);
            if (d > far_d) {
                far_d = d;
                far = static_cast<int>(i);
            }
        }
        --sizes[assignment[far]];
        assignment[far] = c;
        sizes[c] = 1;
        centroids[c] = pts[far];
        moved = true;
    }
    return moved;
}

}  // namespace

Clustering kmeans(const Instance& inst, int k, std::uint64_t seed, int max_iterations) {
    const auto pts = inst.clients();
    const int n = inst.num_clients();
    if (k < 1 || k > n)
        throw std::invalid_argument("k-means needs 1 <= k <= N (k=" + std::to_string(k) + ", N=" +
                                    std::to_string(n) + ")");

    std::mt19937_64 rng(seed);
    Clustering out;
    out.k = k;
    out.centroids = seed_plus_plus(pts, k, rng);
    out.assignment.assign(n, -1);
    std::vector<int> sizes(k, 0);

    for (int iter = 0; iter < max_iterations; ++iter) {
        bool changed = false;
        for (int i = 0; i < n; ++i) {
            int best = 0;
            double best_d = sq_dist(pts[i], out.centroids[0]);
            for (int c = 1; c < k; ++c) {
                const double d = sq_dist(pts[i], out.centroids[c]);
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            if (out.assignment[i] != best) {
                out.assignment[i] = best;
                changed = true;
            }
        }
        recompute_centroids(pts, out.assignment, out.centroids, sizes);
        if (repair_empty(pts, out.assignment, out.centroids, sizes)) {
            recompute_centroids(pts, out.assignment, out.centroids, sizes);
            changed = true;
        }
        if (!changed) break;
    }

    out.medoids.assign(k, -1);
    std::vector<double> best(k, std::numeric_limits<double>::max());
    for (int i = 0; i < n; ++i) {
        const int c = out.assignment[i];
        const double d = sq_dist(pts[i], out.centroids[c]);
        if (d < best[c]) {
            best[c] = d;
            out.medoids[c] = i;
        }
    }
    return out;
}

std::vector<int> quadrant_additions(const Instance& inst, const Clustering& clustering,
                                    std::span<const int> uncovered) {
    const std::size_t cells = static_cast<std::size_t>(clustering.k) * kQuadrantCount;
    std::vector<int> pick(cells, -1);
    std::vector<double> pick_d(cells, -1.0);
    for (int i : uncovered) {
        const int c = clustering.assignment[i];
        const Point& medoid = inst.client(clustering.medoids[c]);
        const auto cell = static_cast<std::size_t>(c) * kQuadrantCount +
                          static_cast<std::size_t>(quadrant_of(inst.client(i), medoid));
        const double d = sq_dist(inst.client(i), medoid);
        if (d > pick_d[cell] || (d == pick_d[cell] && i < pick[cell])) {
            pick_d[cell] = d;
            pick[cell] = i;
        }
    }
    std::vector<int> out;
    for (int i : pick)
        if (i >= 0) out.push_back(i);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace pcenter
