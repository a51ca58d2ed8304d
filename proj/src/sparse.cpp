#include "relsim/sparse.hpp"

#include <algorithm>
#include <cmath>

#include "relsim/errors.hpp"

namespace relsim {

SparseMatrix::SparseMatrix(std::size_t m, std::size_t n, std::vector<Triplet> triplets)
    : m_(m), n_(n) {
    for (const auto& t : triplets) {
        if (t.row >= m || t.col >= n)
            throw config_error("sparse matrix entry (" + std::to_string(t.row) + ", " +
                               std::to_string(t.col) + ") out of bounds for " + std::to_string(m) +
                               "x" + std::to_string(n));
    }
    std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });

    row_ptr_.assign(m + 1, 0);
    cols_.reserve(triplets.size());
    values_.reserve(triplets.size());
    std::size_t i = 0;
    while (i < triplets.size()) {
        std::size_t j = i;
        double sum = 0;
        while (j < triplets.size() && triplets[j].row == triplets[i].row &&
               triplets[j].col == triplets[i].col) {
            sum += triplets[j].value;
            ++j;
        }
        if (sum != 0.0) {
            cols_.push_back(triplets[i].col);
            values_.push_back(sum);
            ++row_ptr_[triplets[i].row + 1];
        }
        i = j;
    }
    for (std::size_t r = 0; r < m; ++r) row_ptr_[r + 1] += row_ptr_[r];
}

void SparseMatrix::mul_vec(std::span<const double> x, std::span<double> y) const {
    std::fill(y.begin(), y.end(), 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
        double acc = 0;
        for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) acc += values_[p] * x[cols_[p]];
        y[i] = acc;
    }
}

void SparseMatrix::mul_vec_transpose(std::span<const double> x, std::span<double> y) const {
    std::fill(y.begin(), y.end(), 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
        const double xi = x[i];
        if (xi == 0.0) continue;
        for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) y[cols_[p]] += values_[p] * xi;
    }
}

std::span<const std::size_t> SparseMatrix::row_cols(std::size_t i) const {
    return {cols_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
}

std::span<const double> SparseMatrix::row_values(std::size_t i) const {
    return {values_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
}

double SparseMatrix::row_norm(std::size_t i) const {
    double acc = 0;
    for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) acc += values_[p] * values_[p];
    return std::sqrt(acc);
}

double SparseMatrix::row_dot(std::size_t i, std::size_t j) const {
    std::size_t pi = row_ptr_[i], pj = row_ptr_[j];
    const std::size_t ei = row_ptr_[i + 1], ej = row_ptr_[j + 1];
    double acc = 0;
    while (pi < ei && pj < ej) {
        if (cols_[pi] < cols_[pj])
            ++pi;
        else if (cols_[pj] < cols_[pi])
            ++pj;
        else {
            acc += values_[pi] * values_[pj];
            ++pi;
            ++pj;
        }
    }
    return acc;
}

double SparseMatrix::frobenius_norm() const {
    double acc = 0;
    for (double v : values_) acc += v * v;
    return std::sqrt(acc);
}

std::vector<std::vector<double>> SparseMatrix::to_dense() const {
    std::vector<std::vector<double>> out(m_, std::vector<double>(n_, 0.0));
    for_each([&](std::size_t i, std::size_t j, double v) { out[i][j] = v; });
    return out;
}

SparseMatrix SparseMatrix::transformed(const std::vector<double>& col_scale, bool log_transform) const {
    if (col_scale.size() != n_) throw config_error("column scale length mismatch");
    std::vector<Triplet> out;
    out.reserve(nnz());
    for_each([&](std::size_t i, std::size_t j, double v) {
        double w = log_transform ? std::log1p(v) : v;
        out.push_back({i, j, col_scale[j] * w});
    });
    return SparseMatrix(m_, n_, std::move(out));
}

}  // namespace relsim
