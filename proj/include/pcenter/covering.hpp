#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "pcenter/deadline.hpp"
#include "pcenter/instance.hpp"
#include "pcenter/table.hpp"

namespace pcenter {

/// Boolean incidence of a set-cover instance: rows must be covered, a column
/// covers the rows it is incident to. Kept as bitsets in both directions.
class CoverMatrix {
public:
    CoverMatrix(int rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int row_words() const { return row_words_; }
    int col_words() const { return col_words_; }

    void set(int row, int col);
    bool covers(int row, int col) const { return (row_bits(row)[col >> 6] >> (col & 63)) & 1U; }

    /// Columns covering `row`.
    std::span<const std::uint64_t> row_bits(int row) const {
        return {by_row_.data() + static_cast<std::size_t>(row) * col_words_, static_cast<std::size_t>(col_words_)};
    }
    /// Rows covered by `col`.
    std::span<const std::uint64_t> col_bits(int col) const {
        return {by_col_.data() + static_cast<std::size_t>(col) * row_words_, static_cast<std::size_t>(row_words_)};
    }

private:
    int rows_;
    int cols_;
    int row_words_;
    int col_words_;
    std::vector<std::uint64_t> by_row_;
    std::vector<std::uint64_t> by_col_;
};

enum class CoverStatus { CoverFound, ProvedExceedsP };

/// How a PROVED_EXCEEDS_P verdict was reached.
enum class Certificate { None, RootBound, Exhausted };

struct CoverResult {
    CoverStatus status = CoverStatus::ProvedExceedsP;
    std::vector<int> chosen;                // column positions, when found (exact mode)
    double fractional_value = 0.0;          // LP mode
    std::vector<double> fractional_weights; // LP mode, one per column
    Certificate certificate = Certificate::None;
    long nodes = 0;
};

inline constexpr double kLpFeasibilityTolerance = 1e-6;

/// min sum x s.t. every row covered fractionally, 0 <= x. CoverFound iff the
/// optimum is <= cap (within kLpFeasibilityTolerance).
/// Throws std::invalid_argument when some row has no covering column.
CoverResult solve_set_cover_lp(const CoverMatrix& m, int cap = std::numeric_limits<int>::max());

/// Decides whether a cover with at most `cap` columns exists, by
/// branch-and-bound with reductions, a greedy incumbent and LP bounds. Stops
/// at the first cover within the cap. Checks `deadline` at every node.
CoverResult solve_set_cover_exact(const CoverMatrix& m, int cap, const Deadline& deadline = {});

/// Representative rows x candidate site columns over a rounded distance table.
struct CoverageSystem {
    const DistanceTable* table = nullptr;
    std::vector<int> cols;               // candidate site indices, ascending
    std::vector<Distance> distinct;      // sorted distinct table values, none below the largest row minimum

    int rows() const { return table->num_reps(); }
    bool covers(int row, int col_pos, Distance threshold) const {
        return table->at(row, cols[col_pos]) <= threshold;
    }
    CoverMatrix at_threshold(Distance threshold) const;
};

CoverageSystem make_coverage_system(const DistanceTable& table, std::vector<int> cols);

CoverResult solve_set_cover_lp(const CoverageSystem& sys, Distance threshold, int p);
CoverResult solve_set_cover_exact(const CoverageSystem& sys, Distance threshold, int p,
                                  const Deadline& deadline = {});

enum class SearchMode { Integer, Relaxed };

struct RadiusSearch {
    int index = 0;               // into CoverageSystem::distinct
    Distance threshold = 0;
    std::vector<int> sites;      // Integer: witness padded to min(p, |cols|) sites
    std::vector<double> weights; // Relaxed: LP weights per column position
    int probes = 0;
};

/// Smallest distinct distance whose set cover (integer or relaxed) needs at
/// most p columns. With `probe_first_at_lb` the lowest value is tried before
/// bisecting.
RadiusSearch binary_search_radius(const CoverageSystem& sys, int p, SearchMode mode, bool probe_first_at_lb,
                                  const Deadline& deadline = {});

}  // namespace pcenter
