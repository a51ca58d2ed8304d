#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "relsim/sparse.hpp"

namespace relsim {

// Minimal row-major dense matrix, enough for factors and projections.
struct DenseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;  // rows * cols, row-major

    DenseMatrix() = default;
    DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
    std::span<const double> row(std::size_t i) const { return {data.data() + i * cols, cols}; }
    std::span<double> row(std::size_t i) { return {data.data() + i * cols, cols}; }
};

// cosine(u, v) = u.v / (|u| |v|). Throws a numeric error on a zero-norm
// input; callers map that to skip semantics.
double cosine(std::span<const double> u, std::span<const double> v);

struct SvdOptions {
    double tol = 1e-10;  // relative Ritz-residual tolerance
    int max_iter = 1000;  // Lanczos step budget (capped by the operator dimension)
    // Singular values below rank_rel_tol * sigma_1 count as rank deficiency.
    // Working through the Gram operator squares the spectrum, so zero
    // singular values surface as noise near sqrt(eps) * sigma_1; the cutoff
    // must sit above that floor.
    double rank_rel_tol = 1e-7;
    std::uint64_t seed = 0x5eed5eed5eedULL;  // start-vector seed (fixed => deterministic output)
};

struct SvdResult {
    DenseMatrix U;              // m x k, orthonormal columns
    std::vector<double> sigma;  // k, non-increasing, nonnegative
    DenseMatrix V;              // n x k, orthonormal columns

    bool k_truncated_to_rank = false;  // requested k exceeded the detected rank
    int iterations = 0;                // Lanczos steps taken
    double max_residual = 0;           // worst accepted Ritz residual (relative)

    std::size_t k() const { return sigma.size(); }

    // Rows of U_k Sigma_k, the space all cosines are computed in.
    DenseMatrix projection() const;
};

// Top-k singular triplets of a sparse matrix via Lanczos iteration on the
// Gram operator of the smaller side, with full reorthogonalization and
// restarts. Exact (to rounding) when the basis exhausts the operator
// dimension. Signs follow a fixed convention: the largest-magnitude
// component of each left singular vector is positive, so repeated runs and
// cache round-trips are bit-stable.
//
// Throws a numeric error when the step budget is exhausted before the top-k
// residuals reach tol; the message carries the residual diagnostics.
SvdResult truncated_svd(const SparseMatrix& X, int k, const SvdOptions& options = {});

struct ConsistencyReport {
    double max_deviation = 0;
    std::size_t pairs_checked = 0;
    bool lossy = false;  // deviation exceeded the tolerance (expected when k < rank)
};

// Verifies that row cosines computed in U*Sigma match row cosines of X, on
// sampled row pairs. Report-only; zero rows are skipped.
ConsistencyReport row_cosine_consistency_check(const SparseMatrix& X, const SvdResult& svd,
                                               double tolerance = 1e-6,
                                               std::size_t max_pairs = 2000);

}  // namespace relsim
