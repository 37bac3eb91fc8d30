#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pcenter/instance.hpp"

namespace pcenter {

struct Clustering {
    int k = 0;
    std::vector<int> assignment;  // client -> cluster id in [0, k)
    std::vector<int> medoids;     // cluster id -> client index
    std::vector<Point> centroids;
};

enum class Quadrant : std::uint8_t { NE = 0, NW = 1, SW = 2, SE = 3 };

inline constexpr int kQuadrantCount = 4;

/// Lloyd's algorithm from a k-means++ seeding, at most `max_iterations`
/// reassignment rounds. Empty clusters are reseeded at the client farthest
/// from its centroid. Throws std::invalid_argument unless 1 <= k <= N.
Clustering kmeans(const Instance& inst, int k, std::uint64_t seed, int max_iterations = 100);

/// Sign pattern of client - medoid; points on an axis go east / north.
inline Quadrant quadrant_of(const Point& client, const Point& medoid) {
    const double dx = client.x - medoid.x;
    const double dy = client.y - medoid.y;
    if (dy >= 0) return dx >= 0 ? Quadrant::NE : Quadrant::NW;
    return dx < 0 ? Quadrant::SW : Quadrant::SE;
}

/// For every (cluster, quadrant) cell, the uncovered client farthest from the
/// cluster medoid (lowest index on ties). Result is sorted by client index.
std::vector<int> quadrant_additions(const Instance& inst, const Clustering& clustering,
                                    std::span<const int> uncovered);

}  // namespace pcenter
