#include "pcenter/covering.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pcenter/lp.hpp"

namespace pcenter {

namespace {

using Word = std::uint64_t;
using Bits = std::vector<Word>;

int words_for(int n) { return (n + 63) / 64; }

Bits full_bits(int n) {
    Bits b(words_for(n), ~Word{0});
    if (n % 64 != 0 && !b.empty()) b.back() = (Word{1} << (n % 64)) - 1;
    return b;
}

bool test(const Bits& b, int i) { return (b[i >> 6] >> (i & 63)) & 1U; }
void reset(Bits& b, int i) { b[i >> 6] &= ~(Word{1} << (i & 63)); }

bool none(const Bits& b) {
    return std::all_of(b.begin(), b.end(), [](Word w) { return w == 0; });
}

int count(const Bits& b) {
    int c = 0;
    for (Word w : b) c += std::popcount(w);
    return c;
}

int count_and(std::span<const Word> a, const Bits& mask) {
    int c = 0;
    for (std::size_t k = 0; k < mask.size(); ++k) c += std::popcount(a[k] & mask[k]);
    return c;
}

template <typename F>
void for_each_bit(const Bits& b, F&& f) {
    for (std::size_t k = 0; k < b.size(); ++k) {
        Word w = b[k];
        while (w) {
            const int i = static_cast<int>(k * 64) + std::countr_zero(w);
            w &= w - 1;
            f(i);
        }
    }
}

Bits masked(std::span<const Word> a, const Bits& mask) {
    Bits out(mask.size());
    for (std::size_t k = 0; k < mask.size(); ++k) out[k] = a[k] & mask[k];
    return out;
}

bool subset_of(const Bits& a, const Bits& b) {
    for (std::size_t k = 0; k < a.size(); ++k)
        if (a[k] & ~b[k]) return false;
    return true;
}

// Drops columns whose coverage (on active rows) is contained in another
// column's, and rows implied by another row. Both reductions preserve the
// integer and the fractional optimum. Returns false if an active row has no
// active column.
bool reduce_dominance(const CoverMatrix& m, Bits& rows, Bits& cols) {
    bool changed = true;
    while (changed) {
        changed = false;

        std::vector<int> col_ids;
        std::vector<Bits> cov;
        std::vector<int> sizes;
        for_each_bit(cols, [&](int c) {
            Bits cv = masked(m.col_bits(c), rows);
            const int sz = count(cv);
            if (sz == 0) {
                reset(cols, c);
                changed = true;
                return;
            }
            col_ids.push_back(c);
            cov.push_back(std::move(cv));
            sizes.push_back(sz);
        });
        const int nc = static_cast<int>(col_ids.size());
        std::vector<char> dead(nc, 0);
        for (int a = 0; a < nc; ++a) {
            if (dead[a]) continue;
            for (int b = 0; b < nc && !dead[a]; ++b) {
                if (a == b || dead[b] || sizes[a] > sizes[b]) continue;
                if (!subset_of(cov[a], cov[b])) continue;
                // Equal columns: keep the lower index.
                if (sizes[a] == sizes[b] && col_ids[a] < col_ids[b]) continue;
                dead[a] = 1;
            }
        }
        for (int a = 0; a < nc; ++a)
            if (dead[a]) {
                reset(cols, col_ids[a]);
                changed = true;
            }

        std::vector<int> row_ids;
        std::vector<Bits> avail;
        std::vector<int> asz;
        bool infeasible = false;
        for_each_bit(rows, [&](int r) {
            Bits av = masked(m.row_bits(r), cols);
            const int sz = count(av);
            if (sz == 0) infeasible = true;
            row_ids.push_back(r);
            avail.push_back(std::move(av));
            asz.push_back(sz);
        });
        if (infeasible) return false;
        const int nr = static_cast<int>(row_ids.size());
        std::vector<char> gone(nr, 0);
        for (int a = 0; a < nr; ++a) {
            if (gone[a]) continue;
            for (int b = 0; b < nr && !gone[a]; ++b) {
                if (a == b || gone[b] || asz[b] > asz[a]) continue;
                if (!subset_of(avail[b], avail[a])) continue;
                // Row a is covered whenever row b is. Equal rows: keep the lower index.
                if (asz[a] == asz[b] && row_ids[a] < row_ids[b]) continue;
                gone[a] = 1;
            }
        }
        for (int a = 0; a < nr; ++a)
            if (gone[a]) {
                reset(rows, row_ids[a]);
                changed = true;
            }
    }
    return true;
}

struct LpSolve {
    double value = 0.0;
    std::vector<int> col_ids;
    std::vector<double> x;  // aligned with col_ids
};

// Covering LP over the active rows/columns, solved through its packing dual
// (max sum u, one constraint per column) whose slack basis is feasible.
LpSolve covering_lp(const CoverMatrix& m, const Bits& rows, const Bits& cols) {
    LpSolve out;
    std::vector<int> row_ids;
    for_each_bit(rows, [&](int r) { row_ids.push_back(r); });
    for_each_bit(cols, [&](int c) { out.col_ids.push_back(c); });
    const int nr = static_cast<int>(row_ids.size());
    const int nc = static_cast<int>(out.col_ids.size());
    lp::Matrix a(nc, nr);
    for (int ci = 0; ci < nc; ++ci)
        for (int ri = 0; ri < nr; ++ri)
            if (m.covers(row_ids[ri], out.col_ids[ci])) a(ci, ri) = 1.0;
    // A tiny deterministic perturbation of the right-hand side breaks ties
    // between degenerate vertices.
    std::vector<double> b(nc);
    for (int ci = 0; ci < nc; ++ci) b[ci] = 1.0 + 1e-7 * static_cast<double>((ci * 2654435761U) % 1000U) / 1000.0;
    const std::vector<double> c(nr, 1.0);
    const auto res = lp::maximize(a, b, c);
    if (res.status != lp::Status::Optimal) throw std::invalid_argument("set cover LP: some row cannot be covered");
    // Scale the packing back inside its constraints so the value is always a
    // valid lower bound.
    double worst = 1.0;
    for (int ci = 0; ci < nc; ++ci) {
        double load = 0.0;
        for (int ri = 0; ri < nr; ++ri) load += a(ci, ri) * std::max(res.primal[ri], 0.0);
        worst = std::max(worst, load);
    }
    out.value = 0.0;
    for (double u : res.primal) out.value += std::max(u, 0.0) / worst;
    out.x = res.dual;
    for (double& v : out.x) v = std::clamp(v, 0.0, 1.0);
    return out;
}

class ExactSolver {
public:
    ExactSolver(const CoverMatrix& m, const Deadline& deadline) : m_(m), deadline_(deadline) {}

    CoverResult run(int cap) {
        CoverResult res;
        std::vector<int> chosen;
        const bool found = search(full_bits(m_.rows()), full_bits(m_.cols()), chosen, cap, true);
        res.nodes = nodes_;
        if (found) {
            res.status = CoverStatus::CoverFound;
            res.chosen = witness_;
            std::sort(res.chosen.begin(), res.chosen.end());
        } else {
            res.status = CoverStatus::ProvedExceedsP;
            res.certificate = root_fathomed_ ? Certificate::RootBound : Certificate::Exhausted;
        }
        return res;
    }

private:
    bool accept(std::vector<int> cover) {
        witness_ = std::move(cover);
        return true;
    }

    // Greedy completion of `chosen` over the active rows; empty if it fails to
    // finish within `budget` extra columns.
    std::vector<int> greedy(const Bits& rows, const Bits& cols, const std::vector<int>& order, int budget) const {
        Bits uncovered = rows;
        std::vector<int> picks;
        while (!none(uncovered)) {
            if (static_cast<int>(picks.size()) >= budget) return {};
            int best = -1, best_gain = 0;
            for (int c : order) {
                if (!test(cols, c)) continue;
                const int g = count_and(m_.col_bits(c), uncovered);
                if (g > best_gain) {
                    best_gain = g;
                    best = c;
                }
            }
            if (best < 0) return {};
            picks.push_back(best);
            const auto cb = m_.col_bits(best);
            for (std::size_t k = 0; k < uncovered.size(); ++k) uncovered[k] &= ~cb[k];
        }
        return picks;
    }

    // Lower bound from rows pairwise sharing no column.
    int packing_bound(const Bits& rows, const Bits& cols) const {
        std::vector<std::pair<int, int>> by_size;
        for_each_bit(rows, [&](int r) { by_size.emplace_back(count_and(m_.row_bits(r), cols), r); });
        std::sort(by_size.begin(), by_size.end());
        Bits used(cols.size(), 0);
        int packed = 0;
        for (auto [sz, r] : by_size) {
            const auto rb = m_.row_bits(r);
            bool clash = false;
            for (std::size_t k = 0; k < used.size() && !clash; ++k) clash = (rb[k] & cols[k] & used[k]) != 0;
            if (clash) continue;
            ++packed;
            for (std::size_t k = 0; k < used.size(); ++k) used[k] |= rb[k] & cols[k];
        }
        return packed;
    }

    bool search(Bits rows, Bits cols, std::vector<int>& chosen, int budget, bool root) {
        deadline_.check();
        ++nodes_;
        const std::size_t entry_size = chosen.size();
        auto fail = [&] {
            chosen.resize(entry_size);
            if (root) root_fathomed_ = true;
            return false;
        };

        // Forced columns, then dominance, until stable.
        while (true) {
            bool forced = false;
            bool dead_row = false;
            for_each_bit(rows, [&](int r) {
                if (dead_row || !test(rows, r)) return;
                const Bits av = masked(m_.row_bits(r), cols);
                const int cnt = count(av);
                if (cnt == 0) {
                    dead_row = true;
                    return;
                }
                if (cnt == 1) {
                    int c = -1;
                    for_each_bit(av, [&](int x) { c = x; });
                    chosen.push_back(c);
                    --budget;
                    const auto cb = m_.col_bits(c);
                    for (std::size_t k = 0; k < rows.size(); ++k) rows[k] &= ~cb[k];
                    reset(cols, c);
                    forced = true;
                }
            });
            if (dead_row || budget < 0) return fail();
            if (none(rows)) return accept(chosen);
            if (budget == 0) return fail();
            if (!reduce_dominance(m_, rows, cols)) return fail();
            if (!forced) break;
        }
        if (none(rows)) return accept(chosen);

        if (packing_bound(rows, cols) > budget) return fail();

        std::vector<int> order;
        for_each_bit(cols, [&](int c) { order.push_back(c); });
        if (auto g = greedy(rows, cols, order, budget); !g.empty()) {
            auto cover = chosen;
            cover.insert(cover.end(), g.begin(), g.end());
            return accept(std::move(cover));
        }

        const LpSolve lp = covering_lp(m_, rows, cols);
        if (lp.value > budget + kLpFeasibilityTolerance) return fail();

        // LP-guided rounding: greedy over columns in decreasing weight.
        std::vector<int> by_weight(lp.col_ids.size());
        for (std::size_t k = 0; k < by_weight.size(); ++k) by_weight[k] = static_cast<int>(k);
        std::stable_sort(by_weight.begin(), by_weight.end(), [&](int a, int b) { return lp.x[a] > lp.x[b]; });
        {
            Bits uncovered = rows;
            std::vector<int> picks;
            for (int k : by_weight) {
                if (none(uncovered) || static_cast<int>(picks.size()) > budget) break;
                const auto cb = m_.col_bits(lp.col_ids[k]);
                if (count_and(cb, uncovered) == 0) continue;
                picks.push_back(lp.col_ids[k]);
                for (std::size_t w = 0; w < uncovered.size(); ++w) uncovered[w] &= ~cb[w];
            }
            if (none(uncovered) && static_cast<int>(picks.size()) <= budget) {
                auto cover = chosen;
                cover.insert(cover.end(), picks.begin(), picks.end());
                return accept(std::move(cover));
            }
        }

        // Branch on the column whose weight is closest to one half.
        int branch = -1;
        double best = 2.0;
        for (std::size_t k = 0; k < lp.x.size(); ++k) {
            const double frac = std::abs(lp.x[k] - 0.5);
            if (lp.x[k] > 1e-9 && lp.x[k] < 1 - 1e-9 && frac < best) {
                best = frac;
                branch = lp.col_ids[k];
            }
        }
        if (branch < 0) {
            // Integral LP optimum: its support is a cover of size lp.value <= budget.
            auto cover = chosen;
            for (std::size_t k = 0; k < lp.x.size(); ++k)
                if (lp.x[k] > 0.5) cover.push_back(lp.col_ids[k]);
            return accept(std::move(cover));
        }

        {
            Bits r1 = rows, c1 = cols;
            const auto cb = m_.col_bits(branch);
            for (std::size_t k = 0; k < r1.size(); ++k) r1[k] &= ~cb[k];
            reset(c1, branch);
            chosen.push_back(branch);
            if (none(r1)) return accept(chosen);
            if (search(std::move(r1), std::move(c1), chosen, budget - 1, false)) return true;
            chosen.pop_back();
        }
        {
            Bits c0 = cols;
            reset(c0, branch);
            if (search(std::move(rows), std::move(c0), chosen, budget, false)) return true;
        }
        chosen.resize(entry_size);
        return false;
    }

    const CoverMatrix& m_;
    const Deadline& deadline_;
    std::vector<int> witness_;
    long nodes_ = 0;
    bool root_fathomed_ = false;
};

}  // namespace

CoverMatrix::CoverMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), row_words_(words_for(rows)), col_words_(words_for(cols)) {
    by_row_.assign(static_cast<std::size_t>(rows) * col_words_, 0);
    by_col_.assign(static_cast<std::size_t>(cols) * row_words_, 0);
}

void CoverMatrix::set(int row, int col) {
    by_row_[static_cast<std::size_t>(row) * col_words_ + (col >> 6)] |= Word{1} << (col & 63);
    by_col_[static_cast<std::size_t>(col) * row_words_ + (row >> 6)] |= Word{1} << (row & 63);
}

CoverResult solve_set_cover_lp(const CoverMatrix& m, int cap) {
    Bits rows = full_bits(m.rows());
    Bits cols = full_bits(m.cols());
    CoverResult res;
    res.fractional_weights.assign(m.cols(), 0.0);
    if (m.rows() == 0) {
        res.status = CoverStatus::CoverFound;
        return res;
    }
    if (!reduce_dominance(m, rows, cols)) throw std::invalid_argument("set cover LP: some row cannot be covered");
    const LpSolve lp = covering_lp(m, rows, cols);
    res.fractional_value = lp.value;
    for (std::size_t k = 0; k < lp.col_ids.size(); ++k) res.fractional_weights[lp.col_ids[k]] = lp.x[k];
    res.status = lp.value <= cap + kLpFeasibilityTolerance ? CoverStatus::CoverFound : CoverStatus::ProvedExceedsP;
    if (res.status == CoverStatus::ProvedExceedsP) res.certificate = Certificate::RootBound;
    return res;
}

CoverResult solve_set_cover_exact(const CoverMatrix& m, int cap, const Deadline& deadline) {
    if (m.rows() == 0) {
        CoverResult res;
        res.status = CoverStatus::CoverFound;
        return res;
    }
    for (int r = 0; r < m.rows(); ++r)
        if (none(Bits(m.row_bits(r).begin(), m.row_bits(r).end())))
            throw std::invalid_argument("set cover: row " + std::to_string(r) + " cannot be covered");
    return ExactSolver(m, deadline).run(cap);
}

// ---- coverage systems over rounded distances --------------------------------

CoverMatrix CoverageSystem::at_threshold(Distance threshold) const {
    CoverMatrix m(rows(), static_cast<int>(cols.size()));
    for (int c = 0; c < static_cast<int>(cols.size()); ++c) {
        const auto col = table->site_column(cols[c]);
        for (int r = 0; r < rows(); ++r)
            if (col[r] <= threshold) m.set(r, c);
    }
    return m;
}

CoverageSystem make_coverage_system(const DistanceTable& table, std::vector<int> cols) {
    CoverageSystem sys;
    sys.table = &table;
    std::sort(cols.begin(), cols.end());
    sys.cols = std::move(cols);
    std::vector<Distance> values;
    values.reserve(static_cast<std::size_t>(table.num_reps()) * sys.cols.size());
    for (int j : sys.cols)
        for (auto v : table.site_column(j)) values.push_back(v);
    // Thresholds below the largest row minimum leave some row uncovered.
    Distance floor = 0;
    for (int r = 0; r < table.num_reps(); ++r) {
        Distance best = std::numeric_limits<Distance>::max();
        for (int j : sys.cols) best = std::min<Distance>(best, table.at(r, j));
        floor = std::max(floor, best);
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    values.erase(values.begin(), std::lower_bound(values.begin(), values.end(), floor));
    sys.distinct = std::move(values);
    return sys;
}

CoverResult solve_set_cover_lp(const CoverageSystem& sys, Distance threshold, int p) {
    return solve_set_cover_lp(sys.at_threshold(threshold), p);
}

CoverResult solve_set_cover_exact(const CoverageSystem& sys, Distance threshold, int p, const Deadline& deadline) {
    return solve_set_cover_exact(sys.at_threshold(threshold), p, deadline);
}

RadiusSearch binary_search_radius(const CoverageSystem& sys, int p, SearchMode mode, bool probe_first_at_lb,
                                  const Deadline& deadline) {
    if (sys.distinct.empty()) throw std::invalid_argument("binary search over an empty distance set");
    RadiusSearch out;
    int witness_index = -1;
    CoverResult witness;

    auto probe = [&](int k) {
        deadline.check();
        ++out.probes;
        CoverResult r = mode == SearchMode::Integer ? solve_set_cover_exact(sys, sys.distinct[k], p, deadline)
                                                    : solve_set_cover_lp(sys, sys.distinct[k], p);
        const bool ok = r.status == CoverStatus::CoverFound;
        if (ok) {
            witness_index = k;
            witness = std::move(r);
        }
        return ok;
    };

    int lo = 0;
    int hi = static_cast<int>(sys.distinct.size()) - 1;
    if (probe_first_at_lb && lo < hi) {
        if (probe(lo)) hi = lo;
        else lo = lo + 1;
    }
    while (lo < hi) {
        const int mid = lo + (hi - lo) / 2;
        if (probe(mid)) hi = mid;
        else lo = mid + 1;
    }
    if (witness_index != hi) probe(hi);

    out.index = hi;
    out.threshold = sys.distinct[hi];
    if (mode == SearchMode::Integer) {
        std::vector<char> used(sys.cols.size(), 0);
        for (int c : witness.chosen) used[c] = 1;
        const int target = std::min<int>(p, static_cast<int>(sys.cols.size()));
        int count_open = static_cast<int>(witness.chosen.size());
        for (std::size_t c = 0; c < used.size() && count_open < target; ++c) {
            if (!used[c]) {
                used[c] = 1;
                ++count_open;
            }
        }
        for (std::size_t c = 0; c < used.size(); ++c)
            if (used[c]) out.sites.push_back(sys.cols[c]);
    } else {
        out.weights = std::move(witness.fractional_weights);
    }
    return out;
}

}  // namespace pcenter
