#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace relsim {

struct Triplet {
    std::size_t row = 0;
    std::size_t col = 0;
    double value = 0;
};

// Sparse matrix in CSR form, built from coordinate triplets. Duplicate
// coordinates are merged by summation at construction. Immutable afterwards;
// all operations are pure and safe to call concurrently.
class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(std::size_t m, std::size_t n, std::vector<Triplet> triplets);

    std::size_t rows() const { return m_; }
    std::size_t cols() const { return n_; }
    std::size_t nnz() const { return values_.size(); }
    double density() const {
        return m_ && n_ ? static_cast<double>(nnz()) / (static_cast<double>(m_) * static_cast<double>(n_)) : 0.0;
    }

    // y = X x  (x has n entries, result has m)
    void mul_vec(std::span<const double> x, std::span<double> y) const;
    // y = X^T x  (x has m entries, result has n)
    void mul_vec_transpose(std::span<const double> x, std::span<double> y) const;

    std::span<const std::size_t> row_cols(std::size_t i) const;
    std::span<const double> row_values(std::size_t i) const;

    double row_norm(std::size_t i) const;
    // Dot product of two rows (merge join on sorted column indices).
    double row_dot(std::size_t i, std::size_t j) const;
    bool row_empty(std::size_t i) const { return row_ptr_[i] == row_ptr_[i + 1]; }

    double frobenius_norm() const;

    // Canonical row-major triplet enumeration (used for serialization).
    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (std::size_t i = 0; i < m_; ++i)
            for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) fn(i, cols_[p], values_[p]);
    }

    std::vector<std::vector<double>> to_dense() const;

    // Applies fn to every stored value (used by the log-entropy transform).
    SparseMatrix transformed(const std::vector<double>& col_scale, bool log_transform) const;

private:
    std::size_t m_ = 0;
    std::size_t n_ = 0;
    std::vector<std::size_t> row_ptr_;
    std::vector<std::size_t> cols_;
    std::vector<double> values_;
};

}  // namespace relsim
