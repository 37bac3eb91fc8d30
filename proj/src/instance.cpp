#include "pcenter/instance.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace pcenter {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

bool same_points(const std::vector<Point>& a, const std::vector<Point>& b) {
    return a.size() == b.size() &&
           std::equal(a.begin(), a.end(), b.begin(),
                      [](const Point& u, const Point& v) { return u.x == v.x && u.y == v.y; });
}

}  // namespace

Instance::Instance(std::string name, std::vector<Point> clients, std::vector<Point> sites, int p)
    : name_(std::move(name)), clients_(std::move(clients)), sites_(std::move(sites)) {
    if (clients_.empty()) throw std::invalid_argument("instance has no clients");
    if (sites_.empty()) throw std::invalid_argument("instance has no sites");
    colocated_ = same_points(clients_, sites_);
    if (p != 0) set_p(p);
}

void Instance::set_p(int p) {
    if (p < 1 || p > num_sites())
        throw std::invalid_argument("p must lie in [1, " + std::to_string(num_sites()) + "], got " +
                                    std::to_string(p));
    p_ = p;
}

Solution::Solution(std::vector<int> sites) : open_sites(std::move(sites)) {
    std::sort(open_sites.begin(), open_sites.end());
    open_sites.erase(std::unique(open_sites.begin(), open_sites.end()), open_sites.end());
}

Distance radius(const Instance& inst, std::span<const int> open_sites, std::span<const int> clients) {
    if (clients.empty()) throw std::invalid_argument("radius over an empty client set");
    if (open_sites.empty()) throw std::invalid_argument("radius of an empty solution");
    Distance worst = 0;
    for (int i : clients) {
        Distance nearest = std::numeric_limits<Distance>::max();
        for (int j : open_sites) nearest = std::min(nearest, distance(inst, i, j));
        worst = std::max(worst, nearest);
    }
    return worst;
}

Distance radius(const Instance& inst, std::span<const int> open_sites) {
    if (open_sites.empty()) throw std::invalid_argument("radius of an empty solution");
    Distance worst = 0;
    for (int i = 0; i < inst.num_clients(); ++i) {
        Distance nearest = std::numeric_limits<Distance>::max();
        for (int j : open_sites) nearest = std::min(nearest, distance(inst, i, j));
        worst = std::max(worst, nearest);
    }
    return worst;
}

// ---- TSPLib -----------------------------------------------------------------

Instance parse_tsplib(std::istream& in) {
    std::string name = "unnamed";
    long dimension = -1;
    bool saw_weight_type = false;
    bool in_coords = false;
    std::size_t line_no = 0;
    std::size_t section_line = 0;
    std::vector<Point> coords;
    std::vector<bool> seen;

    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty()) continue;
        if (t == "EOF") break;

        if (in_coords) {
            std::istringstream ls(t);
            long index = 0;
            double x = 0, y = 0;
            if (!(ls >> index >> x >> y)) {
                // A new keyword ends the section early.
                if (std::isalpha(static_cast<unsigned char>(t[0]))) {
                    in_coords = false;
                } else {
                    throw ParseError("malformed coordinate line '" + t + "'", line_no);
                }
            } else {
                if (index < 1 || index > dimension)
                    throw ParseError("node index " + std::to_string(index) + " outside [1, " +
                                         std::to_string(dimension) + "]",
                                     line_no);
                if (seen[index - 1]) throw ParseError("duplicate node index " + std::to_string(index), line_no);
                seen[index - 1] = true;
                coords[index - 1] = Point{x, y};
                continue;
            }
        }

        if (t.rfind("NODE_COORD_SECTION", 0) == 0) {
            if (dimension <= 0) throw ParseError("NODE_COORD_SECTION before a valid DIMENSION", line_no);
            if (!saw_weight_type) throw ParseError("NODE_COORD_SECTION before EDGE_WEIGHT_TYPE", line_no);
            coords.assign(dimension, Point{});
            seen.assign(dimension, false);
            in_coords = true;
            section_line = line_no;
            continue;
        }

        const auto colon = t.find(':');
        if (colon == std::string::npos) throw ParseError("expected 'KEY : value', got '" + t + "'", line_no);
        const std::string key = trim(t.substr(0, colon));
        const std::string value = trim(t.substr(colon + 1));
        if (key == "NAME") {
            name = value;
        } else if (key == "DIMENSION") {
            try {
                std::size_t used = 0;
                dimension = std::stol(value, &used);
                if (used != value.size() || dimension <= 0) throw std::invalid_argument(value);
            } catch (const std::exception&) {
                throw ParseError("invalid DIMENSION '" + value + "'", line_no);
            }
        } else if (key == "EDGE_WEIGHT_TYPE") {
            if (value != "EUC_2D") throw ParseError("unsupported EDGE_WEIGHT_TYPE '" + value + "'", line_no);
            saw_weight_type = true;
        }
        // TYPE, COMMENT, DISPLAY_DATA_TYPE and friends carry nothing we use.
    }

    if (dimension <= 0) throw ParseError("missing DIMENSION", line_no);
    if (coords.empty()) throw ParseError("missing NODE_COORD_SECTION", line_no);
    const auto count = std::count(seen.begin(), seen.end(), true);
    if (count != dimension)
        throw ParseError("NODE_COORD_SECTION has " + std::to_string(count) + " coordinates, DIMENSION is " +
                             std::to_string(dimension),
                         section_line);

    auto sites = coords;
    return Instance(std::move(name), std::move(coords), std::move(sites));
}

Instance read_tsplib_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_tsplib(in);
}

// ---- native JSON ------------------------------------------------------------

namespace {

std::vector<Point> points_from_json(const nlohmann::json& arr, const char* field) {
    if (!arr.is_array()) throw ParseError(std::string("'") + field + "' must be an array", 1);
    std::vector<Point> out;
    out.reserve(arr.size());
    for (const auto& pt : arr) {
        if (!pt.is_array() || pt.size() != 2 || !pt[0].is_number() || !pt[1].is_number())
            throw ParseError(std::string("'") + field + "' entries must be [x, y]", 1);
        out.push_back(Point{pt[0].get<double>(), pt[1].get<double>()});
    }
    return out;
}

}  // namespace

Instance parse_native(std::istream& in) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what(), 1);
    }
    if (!doc.is_object() || !doc.contains("clients")) throw ParseError("native instance needs a 'clients' array", 1);
    auto clients = points_from_json(doc["clients"], "clients");
    auto sites = doc.contains("sites") ? points_from_json(doc["sites"], "sites") : clients;
    const std::string name = doc.value("name", std::string("unnamed"));
    const int p = doc.value("p", 0);
    if (clients.empty() || sites.empty()) throw ParseError("native instance with no clients or sites", 1);
    return Instance(name, std::move(clients), std::move(sites), p);
}

std::string to_native(const Instance& inst) {
    auto pts = [](std::span<const Point> ps) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& pt : ps) arr.push_back({pt.x, pt.y});
        return arr;
    };
    nlohmann::json doc;
    doc["name"] = inst.name();
    doc["p"] = inst.p();
    doc["clients"] = pts(inst.clients());
    if (!inst.colocated()) doc["sites"] = pts(inst.sites());
    return doc.dump();
}

Instance read_instance_file(const std::string& path) {
    if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open " + path);
        return parse_native(in);
    }
    return read_tsplib_file(path);
}

// ---- brute force ------------------------------------------------------------

BruteForceResult brute_force_optimum(const Instance& inst) {
    const int m = inst.num_sites();
    const int n = inst.num_clients();
    const int p = std::min(std::max(inst.p(), 1), m);

    double combos = 1.0;
    for (int t = 0; t < p; ++t) combos = combos * (m - t) / (t + 1);
    if (combos > kBruteForceLimit)
        throw std::length_error("brute force over " + std::to_string(combos) + " subsets exceeds the guard");

    // Oracle-sized instances only, so the full matrix is fine here.
    std::vector<Distance> d(static_cast<std::size_t>(n) * m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) d[static_cast<std::size_t>(i) * m + j] = distance(inst, i, j);

    std::vector<int> subset(p);
    for (int t = 0; t < p; ++t) subset[t] = t;
    Distance best = std::numeric_limits<Distance>::max();
    std::vector<int> best_subset;
    while (true) {
        Distance worst = 0;
        for (int i = 0; i < n && worst < best; ++i) {
            const Distance* row = &d[static_cast<std::size_t>(i) * m];
            Distance nearest = std::numeric_limits<Distance>::max();
            for (int j : subset) nearest = std::min(nearest, row[j]);
            worst = std::max(worst, nearest);
        }
        if (worst < best) {
            best = worst;
            best_subset = subset;
        }
        int t = p - 1;
        while (t >= 0 && subset[t] == m - p + t) --t;
        if (t < 0) break;
        ++subset[t];
        for (int u = t + 1; u < p; ++u) subset[u] = subset[u - 1] + 1;
    }

    BruteForceResult result;
    result.radius = best;
    result.solution = Solution(best_subset);
    result.solution.true_radius = best;
    return result;
}

}  // namespace pcenter
