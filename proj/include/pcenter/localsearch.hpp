#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pcenter/instance.hpp"
#include "pcenter/rounding.hpp"

namespace pcenter {

struct SearchParams {
    int sample_size = 50;        // |C|, the random clients outside the representatives
    int perturb_sites = 0;       // sites replaced per restart; 0 means max(1, p / 10)
    int stall_limit = 5;         // restarts without a new alternative before stopping
    int max_alternatives = 10;
    std::uint64_t seed = 1;
};

/// Alternative solutions that keep every representative within `lb` (under
/// the rounded metric `ctx`) while covering as many sampled non-representative
/// clients as possible. Perturb-then-hill-climb restarts; a solution is kept
/// only when it beats the best coverage count seen so far. Candidate sites
/// default to all sites. Returns an empty list if the incumbent itself does
/// not cover the representatives within `lb`.
std::vector<Solution> generate_alternatives(const Instance& inst, const Solution& incumbent, Distance lb,
                                            std::span<const int> reps, const RoundingContext& ctx,
                                            const SearchParams& params, std::span<const int> candidate_sites = {});

/// Positions of the p largest weights, lowest index first on ties, sorted.
std::vector<int> round_fractional(std::span<const double> weights, int p);

}  // namespace pcenter
