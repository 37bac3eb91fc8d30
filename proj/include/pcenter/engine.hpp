#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pcenter/clustering.hpp"
#include "pcenter/deadline.hpp"
#include "pcenter/domination.hpp"
#include "pcenter/instance.hpp"
#include "pcenter/localsearch.hpp"
#include "pcenter/rounding.hpp"
#include "pcenter/table.hpp"

namespace pcenter {

struct SolveParams {
    int k = 0;  // clusters; 0 means p + 2 (capped at N)
    std::uint64_t seed = 1;
    double time_limit_seconds = 10800.0;
    bool use_dominations = true;
    bool use_local_search = true;
    bool use_rounding = true;
    int domination_cutoff = 230000;  // no dominations when M exceeds this
    SearchParams local_search;       // its seed is derived from `seed`
};

/// One outer (precision) iteration.
struct IterationStats {
    int alpha = 0;
    Distance lb = 0;  // after the iteration
    Distance ub = 0;
    int reps = 0;     // |R| after the iteration
    int added = 0;    // representatives added during the iteration
    int inner_iterations = 0;
    int probes = 0;
    double seconds = 0.0;
};

struct SolveStats {
    std::vector<IterationStats> iterations;
    long cover_probes = 0;
    int peak_reps = 0;
    int initial_reps = 0;
    Distance initial_ub = 0;
};

enum class SolveStatus { Optimal, TimeLimit };

struct SolveResult {
    SolveStatus status = SolveStatus::Optimal;
    Solution solution;
    Distance lb = 0;
    Distance ub = 0;
    SolveStats stats;
    double seconds = 0.0;
};

/// Mutable state shared by the outer and inner loops. Representatives only
/// ever grow; each one caches its true distance row to every site.
class SolveState {
public:
    SolveState(const Instance& inst, std::vector<int> initial_reps);

    const std::vector<int>& reps() const { return reps_; }
    bool is_rep(int client) const { return is_rep_[client] != 0; }
    /// Appends clients not already present; returns how many were new.
    int add_reps(std::span<const int> clients);
    /// Rounded distances of every representative, clipped by `ctx`.
    DistanceTable rounded_table(const RoundingContext& ctx) const;

    Distance lb = 0;
    Distance ub = 0;           // true radius of `incumbent`
    Solution incumbent;
    int alpha = 0;
    bool added_clients = true;
    SolveStats stats;

private:
    const Instance* inst_;
    std::vector<int> reps_;
    std::vector<char> is_rep_;
    std::vector<std::vector<DistanceTable::Value>> rows_;
};

/// Farthest-first traversal over the representatives, picking min(p, |reps|)
/// of them, each mapped to its co-located (or nearest) site. The true radius
/// over all clients is filled in.
Solution initial_solution(const Instance& inst, std::span<const int> reps);

struct AlphaResult {
    Solution solution;
    Distance rounded_radius = 0;  // optimum of the rounded problem unless timed out
    Distance lb = 0;              // proven lower bound on the rounded optimum
    bool timed_out = false;
    int inner_iterations = 0;
    int probes = 0;
};

/// Solves the p-center problem under the rounded metric at precision
/// state.alpha, starting from the representatives in `state` and growing them
/// until the subset optimum is optimal for every client.
AlphaResult solve_pcp_alpha(const Instance& inst, SolveState& state, const Clustering& clustering,
                            const SolveParams& params, const Deadline& deadline = {});

/// Full solve: clustering, initial solution, then rounded solves at
/// decreasing precision until the bounds meet.
SolveResult solve_by_rounding(const Instance& inst, const SolveParams& params);

}  // namespace pcenter
