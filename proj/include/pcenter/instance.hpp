#pragma once

#include <cmath>
#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pcenter {

using Distance = std::int64_t;

struct Point {
    double x = 0.0;
    double y = 0.0;
};

/// Raised by the instance readers. The message carries the offending line.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class Instance {
public:
    Instance() = default;
    Instance(std::string name, std::vector<Point> clients, std::vector<Point> sites, int p = 0);

    const std::string& name() const { return name_; }
    int num_clients() const { return static_cast<int>(clients_.size()); }
    int num_sites() const { return static_cast<int>(sites_.size()); }
    int p() const { return p_; }
    /// Throws std::invalid_argument unless 1 <= p <= M.
    void set_p(int p);

    const Point& client(int i) const { return clients_[i]; }
    const Point& site(int j) const { return sites_[j]; }
    std::span<const Point> clients() const { return clients_; }
    std::span<const Point> sites() const { return sites_; }

    /// True when every client coincides with the site of the same index
    /// (TSPLib-derived instances).
    bool colocated() const { return colocated_; }

private:
    std::string name_;
    std::vector<Point> clients_;
    std::vector<Point> sites_;
    int p_ = 0;
    bool colocated_ = false;
};

/// Euclidean distance rounded half-up to the nearest integer. This is the
/// only distance kernel in the library; no N x M matrix is ever stored.
inline Distance distance(const Point& a, const Point& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return static_cast<Distance>(std::floor(std::sqrt(dx * dx + dy * dy) + 0.5));
}

inline Distance distance(const Instance& inst, int client, int site) {
    return distance(inst.client(client), inst.site(site));
}

struct Solution {
    std::vector<int> open_sites;  // sorted, distinct
    std::optional<Distance> true_radius;
    std::optional<Distance> rounded_radius;

    Solution() = default;
    explicit Solution(std::vector<int> sites);
};

/// Max over `clients` of the distance to the nearest open site.
/// Throws std::invalid_argument on an empty client list or empty solution.
Distance radius(const Instance& inst, std::span<const int> open_sites, std::span<const int> clients);
/// Radius over every client.
Distance radius(const Instance& inst, std::span<const int> open_sites);

Instance parse_tsplib(std::istream& in);
Instance read_tsplib_file(const std::string& path);

/// Native format: {"name": str, "p": int, "clients": [[x,y],...], "sites": [[x,y],...]}.
/// "sites" may be omitted, in which case sites coincide with clients.
Instance parse_native(std::istream& in);
std::string to_native(const Instance& inst);

/// Dispatches on the file extension: ".json" is native, anything else TSPLib.
Instance read_instance_file(const std::string& path);

struct BruteForceResult {
    Distance radius = 0;
    Solution solution;
};

inline constexpr double kBruteForceLimit = 1e7;

/// Enumerates every min(p, M)-subset of sites in lexicographic order and keeps
/// the first one with the smallest radius. Throws std::length_error when
/// C(M, p) exceeds kBruteForceLimit.
BruteForceResult brute_force_optimum(const Instance& inst);

}  // namespace pcenter
