#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace pid {

/// Dense row-major table of nonnegative reals. The workhorse for pairwise
/// marginals, conditional Y×Z tables, and scaling iterates.
class Grid2 {
public:
    Grid2() = default;
    Grid2(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), cells_(rows * cols, fill) {}

    double& operator()(std::size_t r, std::size_t c) { return cells_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return cells_[r * cols_ + c]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return cells_.size(); }
    bool empty() const { return cells_.empty(); }

    std::span<double> data() { return cells_; }
    std::span<const double> data() const { return cells_; }

    double sum() const {
        double total = 0.0;
        for (double v : cells_) total += v;
        return total;
    }

    std::vector<double> row_sums() const {
        std::vector<double> out(rows_, 0.0);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) out[r] += (*this)(r, c);
        return out;
    }

    std::vector<double> col_sums() const {
        std::vector<double> out(cols_, 0.0);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) out[c] += (*this)(r, c);
        return out;
    }

    /// Scale so the entries sum to 1. No-op on an all-zero table.
    void normalize() {
        double total = sum();
        if (total <= 0.0) return;
        for (double& v : cells_) v /= total;
    }

    bool operator==(const Grid2&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> cells_;
};

inline Grid2 normalized(const Grid2& g) {
    Grid2 out = g;
    out.normalize();
    return out;
}

/// Squared L2 distance between two same-shaped tables.
inline double sq_distance(const Grid2& a, const Grid2& b) {
    double acc = 0.0;
    auto da = a.data(), db = b.data();
    for (std::size_t i = 0; i < da.size(); ++i) {
        double d = da[i] - db[i];
        acc += d * d;
    }
    return acc;
}

inline double max_abs_diff(const Grid2& a, const Grid2& b) {
    double m = 0.0;
    auto da = a.data(), db = b.data();
    for (std::size_t i = 0; i < da.size(); ++i) {
        double d = da[i] - db[i];
        if (d < 0) d = -d;
        if (d > m) m = d;
    }
    return m;
}

}  // namespace pid
