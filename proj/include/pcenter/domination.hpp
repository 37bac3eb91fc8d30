#pragma once

#include <vector>

#include "pcenter/table.hpp"

namespace pcenter {

/// Non-dominated sites for the current representatives and rounded metric.
/// dom[j] == 0 iff j is non-dominated; otherwise dom[j] - 1 is the lowest
/// index of a site dominating j.
struct DominationState {
    std::vector<int> non_dominated;  // sorted
    std::vector<int> dom;

    bool operator==(const DominationState&) const = default;
};

/// True iff `by` dominates `site`: no representative is closer to `site`
/// than to `by`, and either one is strictly farther from `site` or all are
/// equal and site < by.
bool dominates(const DistanceTable& table, int by, int site);

/// Every site non-dominated (domination disabled).
DominationState all_sites(int num_sites);

DominationState compute_dominations(const DistanceTable& table);

/// Refreshes `prev` after the table was re-clipped to tighter bounds (same
/// representatives). Only previously non-dominated sites, plus dominated
/// sites whose column became identical to their witness's, are re-tested.
DominationState update_after_bounds_improved(const DominationState& prev, const DistanceTable& table);

/// Refreshes `prev` after representatives were appended to the table; the
/// first `old_reps` rows are the ones `prev` was computed for. Witness
/// searches skip every index below the old witness except sites whose old
/// columns were identical.
DominationState update_after_clients_added(const DominationState& prev, const DistanceTable& table, int old_reps);

}  // namespace pcenter
