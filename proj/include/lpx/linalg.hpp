#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "lpx/error.hpp"

namespace lpx {

/// Row-major dense matrix, sized for the small systems used here.
class DenseMatrix {
public:
    DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    [[nodiscard]] double max_abs() const {
        double m = 0.0;
        for (double x : data_) m = std::max(m, std::abs(x));
        return m;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        std::swap_ranges(data_.begin() + static_cast<std::ptrdiff_t>(a * cols_),
                         data_.begin() + static_cast<std::ptrdiff_t>((a + 1) * cols_),
                         data_.begin() + static_cast<std::ptrdiff_t>(b * cols_));
    }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> data_;
};

struct NullVector {
    std::vector<double> values;
    std::size_t rank = 0;
    std::size_t nullity = 0;
    std::size_t free_column = 0;
    // smallest accepted pivot over largest, after row scaling; a condition proxy
    double pivot_ratio = 1.0;
};

/// One nonzero vector of the null space of `a`, by Gauss-Jordan elimination
/// with partial pivoting. The free variable used is the last non-pivot
/// column, set to 1; the remaining free variables are 0.
inline NullVector null_vector(DenseMatrix a) {
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();
    const double tol = static_cast<double>(std::max(rows, cols)) * std::numeric_limits<double>::epsilon() *
                       std::max(a.max_abs(), std::numeric_limits<double>::min());

    std::vector<std::size_t> pivot_col;
    std::vector<bool> is_pivot(cols, false);
    double pivot_max = 0.0;
    double pivot_min = std::numeric_limits<double>::infinity();

    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t best = r;
        for (std::size_t i = r + 1; i < rows; ++i)
            if (std::abs(a(i, c)) > std::abs(a(best, c))) best = i;
        const double piv = a(best, c);
        if (std::abs(piv) <= tol) continue;
        a.swap_rows(r, best);
        pivot_max = std::max(pivot_max, std::abs(piv));
        pivot_min = std::min(pivot_min, std::abs(piv));
        for (std::size_t j = c; j < cols; ++j) a(r, j) /= piv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            const double factor = a(i, c);
            if (factor == 0.0) continue;
            for (std::size_t j = c; j < cols; ++j) a(i, j) -= factor * a(r, j);
            a(i, c) = 0.0;
        }
        pivot_col.push_back(c);
        is_pivot[c] = true;
        ++r;
    }

    NullVector out;
    out.rank = pivot_col.size();
    out.nullity = cols - out.rank;
    if (out.nullity == 0)
        throw NumericalBreakdown("null_vector: matrix has full column rank; no nonzero null vector");
    std::size_t free = cols;
    for (std::size_t c = cols; c-- > 0;) {
        if (!is_pivot[c]) {
            free = c;
            break;
        }
    }
    out.free_column = free;
    out.values.assign(cols, 0.0);
    out.values[free] = 1.0;
    for (std::size_t i = 0; i < pivot_col.size(); ++i) out.values[pivot_col[i]] = -a(i, free);
    out.pivot_ratio = out.rank == 0 ? 0.0 : pivot_min / pivot_max;
    return out;
}

}  // namespace lpx
