#include "pcenter/engine.hpp"

#include <algorithm>
#include <chrono>
#include <limits>

#include "pcenter/covering.hpp"

namespace pcenter {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// True allocation distance of every client.
std::vector<Distance> allocations(const Instance& inst, std::span<const int> open) {
    std::vector<Distance> out(inst.num_clients(), std::numeric_limits<Distance>::max());
    for (int i = 0; i < inst.num_clients(); ++i)
        for (int j : open) out[i] = std::min(out[i], distance(inst, i, j));
    return out;
}

// Non-representatives not covered within lb under the rounded metric.
std::vector<int> uncovered_clients(const SolveState& state, const std::vector<Distance>& alloc, Distance lb,
                                   const RoundingContext& ctx) {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(alloc.size()); ++i)
        if (!state.is_rep(i) && round_distance(alloc[i], ctx) > lb) out.push_back(i);
    return out;
}

}  // namespace

SolveState::SolveState(const Instance& inst, std::vector<int> initial_reps)
    : inst_(&inst), is_rep_(inst.num_clients(), 0) {
    add_reps(initial_reps);
}

int SolveState::add_reps(std::span<const int> clients) {
    int added = 0;
    for (int i : clients) {
        if (is_rep_[i]) continue;
        is_rep_[i] = 1;
        reps_.push_back(i);
        std::vector<DistanceTable::Value> row(inst_->num_sites());
        for (int j = 0; j < inst_->num_sites(); ++j) row[j] = static_cast<DistanceTable::Value>(distance(*inst_, i, j));
        rows_.push_back(std::move(row));
        ++added;
    }
    stats.peak_reps = std::max(stats.peak_reps, static_cast<int>(reps_.size()));
    return added;
}

DistanceTable SolveState::rounded_table(const RoundingContext& ctx) const {
    DistanceTable t(static_cast<int>(reps_.size()), inst_->num_sites());
    for (int j = 0; j < inst_->num_sites(); ++j)
        for (int r = 0; r < static_cast<int>(reps_.size()); ++r)
            t.set(r, j, static_cast<DistanceTable::Value>(round_distance(rows_[r][j], ctx)));
    return t;
}

Solution initial_solution(const Instance& inst, std::span<const int> reps) {
    const int want = std::min<int>(std::max(inst.p(), 1), static_cast<int>(reps.size()));
    std::vector<int> picked{0};
    std::vector<Distance> nearest(reps.size());
    for (std::size_t r = 0; r < reps.size(); ++r) nearest[r] = distance(inst.client(reps[r]), inst.client(reps[0]));
    while (static_cast<int>(picked.size()) < want) {
        int far = -1;
        for (int r = 0; r < static_cast<int>(reps.size()); ++r) {
            if (std::find(picked.begin(), picked.end(), r) != picked.end()) continue;
            if (far < 0 || nearest[r] > nearest[far]) far = r;
        }
        picked.push_back(far);
        for (std::size_t r = 0; r < reps.size(); ++r)
            nearest[r] = std::min(nearest[r], distance(inst.client(reps[r]), inst.client(reps[far])));
    }

    std::vector<int> sites;
    for (int r : picked) {
        const int client = reps[r];
        if (inst.colocated()) {
            sites.push_back(client);
            continue;
        }
        int best = 0;
        Distance best_d = distance(inst, client, 0);
        for (int j = 1; j < inst.num_sites(); ++j) {
            const Distance d = distance(inst, client, j);
            if (d < best_d) {
                best_d = d;
                best = j;
            }
        }
        sites.push_back(best);
    }
    Solution sol(std::move(sites));
    sol.true_radius = radius(inst, sol.open_sites);
    return sol;
}

AlphaResult solve_pcp_alpha(const Instance& inst, SolveState& state, const Clustering& clustering,
                            const SolveParams& params, const Deadline& deadline) {
    const int p = inst.p();
    const int alpha = state.alpha;
    const bool dominations = params.use_dominations && inst.num_sites() <= params.domination_cutoff;

    AlphaResult out;
    out.solution = state.incumbent;
    Distance lb = state.lb;
    Distance ub = round_distance(*state.incumbent.true_radius, RoundingContext{alpha, state.lb, state.ub});
    out.solution.rounded_radius = ub;

    RoundingContext ctx{alpha, lb, ub};
    DistanceTable table = state.rounded_table(ctx);
    DominationState dom = dominations ? compute_dominations(table) : all_sites(inst.num_sites());
    bool added = state.added_clients = true;

    try {
        while (lb < ub) {
            deadline.check();
            ++out.inner_iterations;
            const CoverageSystem sys = make_coverage_system(table, dom.non_dominated);

            Solution hat;
            Distance subset_lb = 0;
            if (added) {
                const auto found = binary_search_radius(sys, p, SearchMode::Relaxed, true, deadline);
                out.probes += found.probes;
                std::vector<int> sites;
                for (int pos : round_fractional(found.weights, p)) sites.push_back(sys.cols[pos]);
                hat = Solution(std::move(sites));
                subset_lb = found.threshold;
            } else {
                const auto found = binary_search_radius(sys, p, SearchMode::Integer, true, deadline);
                out.probes += found.probes;
                hat = Solution(found.sites);
                subset_lb = found.threshold;
            }

            bool bounds_moved = false;
            if (subset_lb > lb) {
                lb = subset_lb;
                bounds_moved = true;
            }
            const auto alloc = allocations(inst, hat.open_sites);
            const Distance true_radius = *std::max_element(alloc.begin(), alloc.end());
            const Distance rounded = round_distance(true_radius, RoundingContext{alpha, lb, ub});
            if (rounded < ub) {
                ub = rounded;
                out.solution = hat;
                out.solution.true_radius = true_radius;
                out.solution.rounded_radius = rounded;
                bounds_moved = true;
            }
            if (lb >= ub) break;

            ctx = RoundingContext{alpha, lb, ub};
            std::vector<int> additions = quadrant_additions(inst, clustering, uncovered_clients(state, alloc, lb, ctx));
            if (params.use_local_search) {
                SearchParams sp = params.local_search;
                sp.seed = params.seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(state.stats.cover_probes) +
                          static_cast<std::uint64_t>(out.inner_iterations);
                for (const auto& alt : generate_alternatives(inst, hat, lb, state.reps(), ctx, sp, dom.non_dominated)) {
                    const auto alt_alloc = allocations(inst, alt.open_sites);
                    const auto more =
                        quadrant_additions(inst, clustering, uncovered_clients(state, alt_alloc, lb, ctx));
                    additions.insert(additions.end(), more.begin(), more.end());
                }
                std::sort(additions.begin(), additions.end());
                additions.erase(std::unique(additions.begin(), additions.end()), additions.end());
            }

            if (bounds_moved) {
                table = state.rounded_table(ctx);
                if (dominations) dom = update_after_bounds_improved(dom, table);
            }
            const int old_reps = static_cast<int>(state.reps().size());
            added = state.add_reps(additions) > 0;
            state.added_clients = added;
            if (added) {
                table = state.rounded_table(ctx);
                if (dominations) dom = update_after_clients_added(dom, table, old_reps);
            }
        }
    } catch (const TimeLimitReached&) {
        out.timed_out = true;
    }
    out.lb = lb;
    out.rounded_radius = ub;
    state.stats.cover_probes += out.probes;
    return out;
}

SolveResult solve_by_rounding(const Instance& inst, const SolveParams& params) {
    const auto t0 = Clock::now();
    const Deadline deadline(params.time_limit_seconds);
    if (inst.p() < 1) throw std::invalid_argument("solve_by_rounding: p is not set");

    const int k = std::min(params.k > 0 ? params.k : inst.p() + 2, inst.num_clients());
    const Clustering clustering = kmeans(inst, k, params.seed);
    SolveState state(inst, clustering.medoids);
    state.stats.initial_reps = static_cast<int>(state.reps().size());
    state.incumbent = initial_solution(inst, state.reps());
    state.lb = 0;
    state.ub = *state.incumbent.true_radius;
    state.stats.initial_ub = state.ub;

    SolveResult res;
    if (state.ub > 0) state.alpha = params.use_rounding ? initial_alpha(state.ub) : 0;
    while (state.lb < state.ub) {
        if (deadline.expired()) {
            res.status = SolveStatus::TimeLimit;
            break;
        }
        const auto it0 = Clock::now();
        const int reps_before = static_cast<int>(state.reps().size());
        IterationStats it;
        it.alpha = state.alpha;

        const AlphaResult ar = solve_pcp_alpha(inst, state, clustering, params, deadline);
        state.lb = std::max(state.lb, ar.timed_out ? ar.lb : ar.rounded_radius);
        const Distance true_radius = *ar.solution.true_radius;
        if (true_radius < state.ub) {
            state.ub = true_radius;
            state.incumbent = ar.solution;
        }

        it.lb = state.lb;
        it.ub = state.ub;
        it.reps = static_cast<int>(state.reps().size());
        it.added = it.reps - reps_before;
        it.inner_iterations = ar.inner_iterations;
        it.probes = ar.probes;
        it.seconds = seconds_since(it0);
        state.stats.iterations.push_back(it);

        if (ar.timed_out) {
            res.status = state.lb < state.ub ? SolveStatus::TimeLimit : SolveStatus::Optimal;
            break;
        }
        if (!params.use_rounding && state.lb < state.ub)
            throw std::logic_error("exact rounded solve at precision 1 left a gap");
        state.alpha = std::max(0, state.alpha - 1);
    }

    res.solution = state.incumbent;
    res.lb = state.lb;
    res.ub = state.ub;
    res.stats = state.stats;
    res.seconds = seconds_since(t0);
    return res;
}

}  // namespace pcenter
