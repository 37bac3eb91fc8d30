#pragma once

#include <span>
#include <vector>

namespace pcenter::lp {

enum class Status { Optimal, Unbounded };

struct Result {
    Status status = Status::Optimal;
    double value = 0.0;
    std::vector<double> primal;  // one entry per variable
    std::vector<double> dual;    // one entry per constraint
    int pivots = 0;
};

/// Dense row-major matrix.
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;

    Matrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0.0) {}
    double& operator()(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
    double operator()(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }
};

inline constexpr double kPivotTolerance = 1e-9;

/// max c'x  s.t.  A x <= b,  x >= 0,  with b >= 0 so the slack basis is
/// feasible. Condensed-tableau primal simplex: steepest-edge pricing, falling
/// back to Bland's rule after a run of degenerate pivots.
Result maximize(const Matrix& a, std::span<const double> b, std::span<const double> c);

}  // namespace pcenter::lp
