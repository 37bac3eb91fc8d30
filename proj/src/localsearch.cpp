#include "pcenter/localsearch.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>

namespace pcenter {

namespace {

using Word = std::uint64_t;
using Bits = std::vector<Word>;

int words_for(int n) { return (n + 63) / 64; }
void set_bit(Bits& b, int i) { b[i >> 6] |= Word{1} << (i & 63); }

// Coverage bookkeeping for one client group (representatives or the sample C).
struct Coverage {
    std::vector<Bits> by_site;  // candidate position -> clients covered within lb
    std::vector<int> count;     // client -> number of open sites covering it
    Bits covered;               // count >= 1
    Bits single;                // count == 1

    void build(const Instance& inst, std::span<const int> clients, std::span<const int> cand, Distance lb,
               const RoundingContext& ctx) {
        const int n = static_cast<int>(clients.size());
        by_site.assign(cand.size(), Bits(words_for(n), 0));
        for (std::size_t s = 0; s < cand.size(); ++s)
            for (int i = 0; i < n; ++i)
                if (round_distance(distance(inst, clients[i], cand[s]), ctx) <= lb) set_bit(by_site[s], i);
        count.assign(n, 0);
    }

    void reset_counts(std::span<const int> open) {
        std::fill(count.begin(), count.end(), 0);
        for (int s : open) add(s, +1);
        refresh();
    }

    void add(int s, int delta) {
        const Bits& b = by_site[s];
        for (std::size_t k = 0; k < b.size(); ++k) {
            Word w = b[k];
            while (w) {
                count[k * 64 + std::countr_zero(w)] += delta;
                w &= w - 1;
            }
        }
    }

    void refresh() {
        covered.assign(words_for(static_cast<int>(count.size())), 0);
        single = covered;
        for (std::size_t i = 0; i < count.size(); ++i) {
            if (count[i] >= 1) set_bit(covered, static_cast<int>(i));
            if (count[i] == 1) set_bit(single, static_cast<int>(i));
        }
    }

    int total() const {
        int c = 0;
        for (Word w : covered) c += std::popcount(w);
        return c;
    }

    // Clients still covered after closing `out` and opening `in`.
    int after_swap(int out, int in) const {
        const Bits& bo = by_site[out];
        const Bits& bi = by_site[in];
        int c = 0;
        for (std::size_t k = 0; k < covered.size(); ++k) c += std::popcount((covered[k] & ~(bo[k] & single[k])) | bi[k]);
        return c;
    }

    // Closing `out` loses nobody that `in` does not pick up.
    bool keeps_all(int out, int in) const {
        const Bits& bo = by_site[out];
        const Bits& bi = by_site[in];
        for (std::size_t k = 0; k < covered.size(); ++k)
            if (bo[k] & single[k] & ~bi[k]) return false;
        return true;
    }
};

}  // namespace

std::vector<Solution> generate_alternatives(const Instance& inst, const Solution& incumbent, Distance lb,
                                            std::span<const int> reps, const RoundingContext& ctx,
                                            const SearchParams& params, std::span<const int> candidate_sites) {
    std::vector<char> is_rep(inst.num_clients(), 0);
    for (int r : reps) is_rep[r] = 1;
    std::vector<int> pool;
    for (int i = 0; i < inst.num_clients(); ++i)
        if (!is_rep[i]) pool.push_back(i);
    if (pool.empty() || incumbent.open_sites.empty()) return {};

    std::vector<int> cand;
    if (candidate_sites.empty()) {
        cand.resize(inst.num_sites());
        std::iota(cand.begin(), cand.end(), 0);
    } else {
        cand.assign(candidate_sites.begin(), candidate_sites.end());
    }
    cand.insert(cand.end(), incumbent.open_sites.begin(), incumbent.open_sites.end());
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

    std::vector<int> open;  // candidate positions
    for (int s : incumbent.open_sites)
        open.push_back(static_cast<int>(std::lower_bound(cand.begin(), cand.end(), s) - cand.begin()));

    Coverage rep_cov;
    rep_cov.build(inst, reps, cand, lb, ctx);
    rep_cov.reset_counts(open);
    if (rep_cov.total() != static_cast<int>(reps.size())) return {};

    std::mt19937_64 rng(params.seed);
    std::shuffle(pool.begin(), pool.end(), rng);
    const int sample_cap = std::min<int>(4 * params.sample_size, static_cast<int>(pool.size()));
    int sample_size = std::min<int>(params.sample_size, static_cast<int>(pool.size()));
    auto sample = [&] { return std::span<const int>(pool.data(), static_cast<std::size_t>(sample_size)); };

    Coverage c_cov;
    c_cov.build(inst, sample(), cand, lb, ctx);
    c_cov.reset_counts(open);

    const int p = static_cast<int>(open.size());
    const int perturb = params.perturb_sites > 0 ? params.perturb_sites : std::max(1, p / 10);
    const int num_cand = static_cast<int>(cand.size());
    std::vector<char> is_open(num_cand, 0);
    for (int s : open) is_open[s] = 1;

    auto apply_swap = [&](int slot, int in) {
        const int out = open[slot];
        rep_cov.add(out, -1);
        rep_cov.add(in, +1);
        rep_cov.refresh();
        c_cov.add(out, -1);
        c_cov.add(in, +1);
        c_cov.refresh();
        is_open[out] = 0;
        is_open[in] = 1;
        open[slot] = in;
    };

    std::vector<Solution> found;
    int best = c_cov.total();
    int stall = 0;
    while (stall < params.stall_limit && static_cast<int>(found.size()) < params.max_alternatives) {
        // Random admissible replacements.
        for (int t = 0; t < perturb && num_cand > p; ++t) {
            const int slot = std::uniform_int_distribution<int>(0, p - 1)(rng);
            for (int attempt = 0; attempt < 20; ++attempt) {
                const int in = std::uniform_int_distribution<int>(0, num_cand - 1)(rng);
                if (is_open[in] || !rep_cov.keeps_all(open[slot], in)) continue;
                apply_swap(slot, in);
                break;
            }
        }
        // Best-improvement swaps until a local optimum.
        while (true) {
            const int current = c_cov.total();
            int best_gain = 0, best_slot = -1, best_in = -1;
            for (int slot = 0; slot < p; ++slot) {
                for (int in = 0; in < num_cand; ++in) {
                    if (is_open[in] || !rep_cov.keeps_all(open[slot], in)) continue;
                    const int gain = c_cov.after_swap(open[slot], in) - current;
                    if (gain > best_gain) {
                        best_gain = gain;
                        best_slot = slot;
                        best_in = in;
                    }
                }
            }
            if (best_slot < 0) break;
            apply_swap(best_slot, best_in);
        }

        const int covered = c_cov.total();
        if (covered > best) {
            best = covered;
            std::vector<int> sites;
            for (int s : open) sites.push_back(cand[s]);
            found.emplace_back(std::move(sites));
            stall = 0;
        } else {
            ++stall;
        }
        if (covered == sample_size && sample_size < sample_cap) {
            sample_size = std::min(2 * sample_size, sample_cap);
            c_cov.build(inst, sample(), cand, lb, ctx);
            c_cov.reset_counts(open);
            best = c_cov.total();
        }
    }
    return found;
}

std::vector<int> round_fractional(std::span<const double> weights, int p) {
    std::vector<int> idx(weights.size());
    std::iota(idx.begin(), idx.end(), 0);
    const auto take = std::min<std::size_t>(static_cast<std::size_t>(std::max(p, 0)), idx.size());
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return weights[a] > weights[b]; });
    idx.resize(take);
    std::sort(idx.begin(), idx.end());
    return idx;
}

}  // namespace pcenter
