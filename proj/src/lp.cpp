#include "pcenter/lp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace pcenter::lp {

namespace {

constexpr int kDegenerateRunBeforeBland = 50;

}  // namespace

Result maximize(const Matrix& a, std::span<const double> b, std::span<const double> c) {
    const int m = a.rows;
    const int n = a.cols;
    if (static_cast<int>(b.size()) != m || static_cast<int>(c.size()) != n)
        throw std::invalid_argument("lp::maximize: dimension mismatch");
    for (double v : b)
        if (v < 0) throw std::invalid_argument("lp::maximize: right-hand side must be nonnegative");

    // Condensed tableau: row i < m is constraint i, row m the objective;
    // column j < n a nonbasic variable, column n the right-hand side.
    const int width = n + 1;
    std::vector<double> t(static_cast<std::size_t>(m + 1) * width, 0.0);
    auto at = [&](int i, int j) -> double& { return t[static_cast<std::size_t>(i) * width + j]; };
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) at(i, j) = a(i, j);
        at(i, n) = b[i];
    }
    for (int j = 0; j < n; ++j) at(m, j) = -c[j];

    std::vector<int> nonbasic(n), basic(m);
    for (int j = 0; j < n; ++j) nonbasic[j] = j;
    for (int i = 0; i < m; ++i) basic[i] = n + i;

    Result res;
    int degenerate_run = 0;
    std::vector<double> norm(n);
    while (true) {
        const bool bland = degenerate_run >= kDegenerateRunBeforeBland;
        if (!bland) {
            std::fill(norm.begin(), norm.end(), 1.0);
            for (int i = 0; i < m; ++i) {
                const double* row = &at(i, 0);
                for (int j = 0; j < n; ++j) norm[j] += row[j] * row[j];
            }
        }
        int s = -1;
        double best = 0.0;
        for (int j = 0; j < n; ++j) {
            const double d = at(m, j);
            if (d >= -kPivotTolerance) continue;
            if (bland) {
                if (s < 0 || nonbasic[j] < nonbasic[s]) s = j;
            } else if (d * d / norm[j] > best) {
                best = d * d / norm[j];
                s = j;
            }
        }
        if (s < 0) break;

        int r = -1;
        double ratio = std::numeric_limits<double>::infinity();
        for (int i = 0; i < m; ++i) {
            const double coef = at(i, s);
            if (coef <= kPivotTolerance) continue;
            const double q = at(i, n) / coef;
            if (q < ratio - 1e-12 || (q <= ratio + 1e-12 && r >= 0 && basic[i] < basic[r])) {
                ratio = q;
                r = i;
            }
        }
        if (r < 0) {
            res.status = Status::Unbounded;
            return res;
        }
        degenerate_run = ratio <= kPivotTolerance ? degenerate_run + 1 : 0;

        const double piv = at(r, s);
        for (int j = 0; j <= n; ++j)
            if (j != s) at(r, j) /= piv;
        at(r, s) = 1.0 / piv;
        for (int i = 0; i <= m; ++i) {
            if (i == r) continue;
            const double f = at(i, s);
            if (f == 0.0) continue;
            double* row = &at(i, 0);
            const double* prow = &at(r, 0);
            for (int j = 0; j <= n; ++j) {
                if (j == s) continue;
                row[j] -= f * prow[j];
            }
            row[s] = -f * prow[s];
            if (i < m && row[n] < 0.0) row[n] = 0.0;
        }
        std::swap(basic[r], nonbasic[s]);
        ++res.pivots;
    }

    res.value = at(m, n);
    res.primal.assign(n, 0.0);
    res.dual.assign(m, 0.0);
    for (int i = 0; i < m; ++i)
        if (basic[i] < n) res.primal[basic[i]] = at(i, n);
    for (int j = 0; j < n; ++j)
        if (nonbasic[j] >= n) res.dual[nonbasic[j] - n] = at(m, j);
    return res;
}

}  // namespace pcenter::lp
