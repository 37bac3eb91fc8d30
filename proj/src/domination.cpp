#include "pcenter/domination.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

namespace pcenter {

namespace {

std::vector<std::int64_t> column_sums(const DistanceTable& table) {
    std::vector<std::int64_t> sums(table.num_sites(), 0);
    for (int j = 0; j < table.num_sites(); ++j)
        for (auto v : table.site_column(j)) sums[j] += v;
    return sums;
}

// Lowest w in [from, to) dominating `site`, or -1. A dominator's column sum
// can never exceed the dominated one's.
int first_dominator(const DistanceTable& table, const std::vector<std::int64_t>& sums, int site, int from, int to) {
    for (int w = from; w < to; ++w) {
        if (w == site || sums[w] > sums[site]) continue;
        if (dominates(table, w, site)) return w;
    }
    return -1;
}

DominationState finish(std::vector<int> dom) {
    DominationState s;
    s.dom = std::move(dom);
    for (int j = 0; j < static_cast<int>(s.dom.size()); ++j)
        if (s.dom[j] == 0) s.non_dominated.push_back(j);
    return s;
}

bool same_prefix(const DistanceTable& table, int a, int b, int len) {
    const auto ca = table.site_column(a);
    const auto cb = table.site_column(b);
    return std::equal(ca.begin(), ca.begin() + len, cb.begin());
}

}  // namespace

bool dominates(const DistanceTable& table, int by, int site) {
    if (by == site) return false;
    const auto s = table.site_column(site);
    const auto b = table.site_column(by);
    bool strict = false;
    for (std::size_t r = 0; r < s.size(); ++r) {
        if (s[r] < b[r]) return false;
        strict |= s[r] > b[r];
    }
    return strict || site < by;
}

DominationState all_sites(int num_sites) {
    DominationState s;
    s.dom.assign(num_sites, 0);
    s.non_dominated.resize(num_sites);
    std::iota(s.non_dominated.begin(), s.non_dominated.end(), 0);
    return s;
}

DominationState compute_dominations(const DistanceTable& table) {
    const int m = table.num_sites();
    const auto sums = column_sums(table);
    std::vector<int> dom(m, 0);
    for (int j = 0; j < m; ++j) dom[j] = first_dominator(table, sums, j, 0, m) + 1;
    return finish(std::move(dom));
}

DominationState update_after_bounds_improved(const DominationState& prev, const DistanceTable& table) {
    const int m = table.num_sites();
    const int reps = table.num_reps();
    const auto sums = column_sums(table);

    // Clipping is monotone, so every old witness still weakly dominates. A
    // dominated site can only escape when its column now equals its witness's.
    std::vector<int> candidates;
    for (int j = 0; j < m; ++j) {
        if (prev.dom[j] == 0 || same_prefix(table, j, prev.dom[j] - 1, reps)) candidates.push_back(j);
    }
    std::vector<char> survives(m, 0);
    for (int j : candidates) {
        bool dominated = false;
        for (int c : candidates) {
            if (sums[c] <= sums[j] && dominates(table, c, j)) {
                dominated = true;
                break;
            }
        }
        survives[j] = !dominated;
    }

    std::vector<int> dom(m, 0);
    for (int j = 0; j < m; ++j) {
        if (survives[j]) continue;
        const int witness = prev.dom[j] - 1;
        if (witness >= 0 && dominates(table, witness, j)) {
            // Clipping can create dominators below the old witness.
            const int lower = first_dominator(table, sums, j, 0, witness);
            dom[j] = (lower >= 0 ? lower : witness) + 1;
        } else {
            dom[j] = first_dominator(table, sums, j, 0, m) + 1;
        }
    }
    return finish(std::move(dom));
}

DominationState update_after_clients_added(const DominationState& prev, const DistanceTable& table, int old_reps) {
    const int m = table.num_sites();

    // Group sites whose columns were identical over the old representatives;
    // only those pairs can gain a domination relation from new rows.
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const auto ca = table.site_column(a);
        const auto cb = table.site_column(b);
        const bool less = std::lexicographical_compare(ca.begin(), ca.begin() + old_reps, cb.begin(),
                                                       cb.begin() + old_reps);
        if (less) return true;
        if (std::equal(ca.begin(), ca.begin() + old_reps, cb.begin())) return a < b;
        return false;
    });
    std::vector<int> group_of(m, -1);
    std::vector<std::vector<int>> groups;
    for (int t = 0; t < m;) {
        int u = t + 1;
        while (u < m && same_prefix(table, order[t], order[u], old_reps)) ++u;
        if (u - t > 1) {
            groups.emplace_back(order.begin() + t, order.begin() + u);  // ascending indices
            for (int v = t; v < u; ++v) group_of[order[v]] = static_cast<int>(groups.size()) - 1;
        }
        t = u;
    }

    const auto sums = column_sums(table);
    auto tie_dominator = [&](int j, int below) {
        if (group_of[j] < 0) return -1;
        for (int g : groups[group_of[j]]) {
            if (g >= below) break;
            if (g != j && dominates(table, g, j)) return g;
        }
        return -1;
    };

    std::vector<int> dom(m, 0);
    for (int j = 0; j < m; ++j) {
        if (prev.dom[j] == 0) {
            dom[j] = tie_dominator(j, m) + 1;
            continue;
        }
        const int witness = prev.dom[j] - 1;
        const int tied = tie_dominator(j, witness);
        if (tied >= 0) {
            dom[j] = tied + 1;
        } else if (dominates(table, witness, j)) {
            dom[j] = witness + 1;
        } else {
            dom[j] = first_dominator(table, sums, j, witness + 1, m) + 1;
        }
    }
    return finish(std::move(dom));
}

}  // namespace pcenter
