#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pcenter/instance.hpp"

namespace pcenter {

/// Distances from the representative clients to every site, stored site-major
/// so that the column of one site over all representatives is contiguous.
class DistanceTable {
public:
    using Value = std::int32_t;

    DistanceTable() = default;
    DistanceTable(int num_reps, int num_sites) : reps_(num_reps), sites_(num_sites) {
        data_.assign(static_cast<std::size_t>(num_reps) * num_sites, 0);
    }

    /// Builds a table from rep-major rows (one row of M values per representative).
    static DistanceTable from_rows(std::span<const std::vector<Value>> rows, int num_sites) {
        DistanceTable t(static_cast<int>(rows.size()), num_sites);
        for (int r = 0; r < t.reps_; ++r)
            for (int j = 0; j < num_sites; ++j) t.set(r, j, rows[r][j]);
        return t;
    }

    int num_reps() const { return reps_; }
    int num_sites() const { return sites_; }

    Value at(int rep, int site) const { return data_[static_cast<std::size_t>(site) * reps_ + rep]; }
    void set(int rep, int site, Value v) { data_[static_cast<std::size_t>(site) * reps_ + rep] = v; }

    /// Distances from every representative to `site`.
    std::span<const Value> site_column(int site) const {
        return {data_.data() + static_cast<std::size_t>(site) * reps_, static_cast<std::size_t>(reps_)};
    }

private:
    int reps_ = 0;
    int sites_ = 0;
    std::vector<Value> data_;
};

}  // namespace pcenter
