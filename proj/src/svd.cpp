#include "relsim/svd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "relsim/errors.hpp"

namespace relsim {

double cosine(std::span<const double> u, std::span<const double> v) {
    if (u.size() != v.size()) throw config_error("cosine: dimension mismatch");
    double uu = 0, vv = 0, uv = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        uu += u[i] * u[i];
        vv += v[i] * v[i];
        uv += u[i] * v[i];
    }
    if (uu == 0.0 || vv == 0.0) throw numeric_error("cosine of a zero-norm vector is undefined");
    return uv / (std::sqrt(uu) * std::sqrt(vv));
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

// Deterministic uniform doubles in [-1, 1) straight from the engine's raw
// output, so results do not depend on the standard library's distribution.
double next_uniform(std::mt19937_64& rng) {
    return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
}

// Eigenvalues and eigenvectors of a symmetric tridiagonal matrix by the
// implicit QL method with Wilkinson shifts (the classic tql2 routine).
// diag/off are destroyed; on return diag holds eigenvalues and the columns
// of z the eigenvectors (z starts as identity).
void tql2(std::vector<double>& diag, std::vector<double>& off, DenseMatrix& z) {
    const std::size_t n = diag.size();
    if (n == 0) return;
    off.push_back(0.0);

    for (std::size_t l = 0; l < n; ++l) {
        std::size_t iter = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                double dd = std::abs(diag[m]) + std::abs(diag[m + 1]);
                if (std::abs(off[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
            }
            if (m != l) {
                if (++iter > 64) throw numeric_error("tridiagonal QL failed to converge");
                double g = (diag[l + 1] - diag[l]) / (2.0 * off[l]);
                double r = std::hypot(g, 1.0);
                g = diag[m] - diag[l] + off[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                bool underflow = false;
                for (std::size_t i = m; i-- > l;) {
                    double f = s * off[i];
                    double b = c * off[i];
                    r = std::hypot(f, g);
                    off[i + 1] = r;
                    if (r == 0.0) {
                        diag[i + 1] -= p;
                        off[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = diag[i + 1] - p;
                    r = (diag[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    diag[i + 1] = g + p;
                    g = c * r - b;
                    for (std::size_t k = 0; k < n; ++k) {
                        f = z.at(k, i + 1);
                        z.at(k, i + 1) = s * z.at(k, i) + c * f;
                        z.at(k, i) = c * z.at(k, i) - s * f;
                    }
                }
                if (underflow) continue;
                diag[l] -= p;
                off[l] = g;
                off[m] = 0.0;
            }
        } while (m != l);
    }
    off.pop_back();
}

struct RitzSystem {
    std::vector<double> values;  // descending
    DenseMatrix vectors;         // j x j, column i pairs with values[i]
};

RitzSystem solve_tridiagonal(const std::vector<double>& alpha, const std::vector<double>& beta) {
    const std::size_t j = alpha.size();
    std::vector<double> d = alpha;
    std::vector<double> e = beta;  // j-1 entries
    DenseMatrix z(j, j);
    for (std::size_t i = 0; i < j; ++i) z.at(i, i) = 1.0;
    tql2(d, e, z);

    std::vector<std::size_t> order(j);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] > d[b]; });

    RitzSystem out;
    out.values.resize(j);
    out.vectors = DenseMatrix(j, j);
    for (std::size_t c = 0; c < j; ++c) {
        out.values[c] = d[order[c]];
        for (std::size_t r = 0; r < j; ++r) out.vectors.at(r, c) = z.at(r, order[c]);
    }
    return out;
}

// Modified Gram-Schmidt over rows, two passes. The vectors are expected to
// be near-orthonormal already; a vanished vector is a hard error because the
// caller relies on index correspondence.
void orthonormalize_rows(std::vector<std::vector<double>>& basis) {
    for (std::size_t i = 0; i < basis.size(); ++i) {
        auto& v = basis[i];
        for (int pass = 0; pass < 2; ++pass)
            for (std::size_t q = 0; q < i; ++q) axpy(-dot(basis[q], v), basis[q], v);
        double nv = norm(v);
        if (nv == 0.0) throw numeric_error("singular-vector basis degenerated during polish");
        for (double& x : v) x /= nv;
    }
}

}  // namespace

DenseMatrix SvdResult::projection() const {
    DenseMatrix P(U.rows, sigma.size());
    for (std::size_t i = 0; i < U.rows; ++i)
        for (std::size_t j = 0; j < sigma.size(); ++j) P.at(i, j) = U.at(i, j) * sigma[j];
    return P;
}

SvdResult truncated_svd(const SparseMatrix& X, int k, const SvdOptions& options) {
    if (k < 1) throw config_error("truncated_svd: k must be >= 1");
    if (X.nnz() == 0) throw config_error("truncated_svd: matrix has no nonzero entries");

    const std::size_t m = X.rows(), n = X.cols();
    const bool rows_side = m <= n;  // run Lanczos on the smaller Gram operator
    const std::size_t d = rows_side ? m : n;
    const std::size_t want = std::min<std::size_t>(static_cast<std::size_t>(k), d);
    const std::size_t j_max =
        std::min<std::size_t>(d, std::max<std::size_t>(want + 2, static_cast<std::size_t>(options.max_iter)));

    const double fro = X.frobenius_norm();
    const double gram_scale = fro * fro;  // >= ||C||_2 = sigma_1^2
    const double breakdown_tol = gram_scale * 1e-14;

    std::vector<double> scratch(rows_side ? n : m, 0.0);
    auto apply_gram = [&](std::span<const double> x, std::span<double> y) {
        if (rows_side) {  // y = X X^T x
            X.mul_vec_transpose(x, scratch);
            X.mul_vec(scratch, y);
        } else {  // y = X^T X x
            X.mul_vec(x, scratch);
            X.mul_vec_transpose(scratch, y);
        }
    };

    std::mt19937_64 rng(options.seed);
    auto random_unit_orthogonal = [&](const std::vector<std::vector<double>>& basis) {
        std::vector<double> v(d);
        for (int attempt = 0; attempt < 8; ++attempt) {
            for (double& x : v) x = next_uniform(rng);
            for (int pass = 0; pass < 2; ++pass)
                for (const auto& q : basis) axpy(-dot(q, v), q, v);
            double nv = norm(v);
            if (nv > 1e-8) {
                for (double& x : v) x /= nv;
                return v;
            }
        }
        return std::vector<double>();  // subspace numerically exhausted
    };

    std::vector<std::vector<double>> basis;
    std::vector<double> alpha, beta;
    basis.push_back(random_unit_orthogonal(basis));

    RitzSystem ritz;
    bool have_ritz = false;
    bool converged = false;
    double worst_residual = 0;
    std::size_t next_check = std::min(j_max, want + 8);
    std::vector<double> z(d);

    while (true) {
        const std::size_t j = alpha.size();
        apply_gram(basis[j], z);
        double a = dot(basis[j], z);
        alpha.push_back(a);

        axpy(-a, basis[j], z);
        if (j > 0 && beta[j - 1] != 0.0) axpy(-beta[j - 1], basis[j - 1], z);
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& qi : basis) axpy(-dot(qi, z), qi, z);
        const double b = norm(z);

        const std::size_t jn = alpha.size();
        const bool broke_down = b <= breakdown_tol;
        if (jn >= next_check || jn >= j_max || broke_down) {
            ritz = solve_tridiagonal(alpha, beta);
            have_ritz = true;
            const double theta1 = std::max(ritz.values[0], std::numeric_limits<double>::min());
            const double rank_floor = theta1 * options.rank_rel_tol * options.rank_rel_tol;

            std::size_t significant = 0;
            worst_residual = 0;
            for (std::size_t i = 0; i < std::min(want, jn); ++i) {
                if (ritz.values[i] <= rank_floor) break;
                ++significant;
                worst_residual = std::max(
                    worst_residual, std::abs(b * ritz.vectors.at(jn - 1, i)) / theta1);
            }
            if (significant >= want && worst_residual <= options.tol) {
                converged = true;
                break;
            }
            if (jn >= d) {  // complete basis: exact up to rounding
                converged = true;
                break;
            }
            if (jn >= j_max) {
                converged = worst_residual <= options.tol;
                break;
            }
            next_check = std::min(j_max, jn + std::max<std::size_t>(8, jn / 2));
        }

        if (broke_down) {
            // Invariant subspace found; restart to reach the rest of the
            // spectrum (repeated singular values live there).
            auto fresh = random_unit_orthogonal(basis);
            if (fresh.empty()) {
                ritz = solve_tridiagonal(alpha, beta);
                have_ritz = true;
                converged = true;
                break;
            }
            beta.push_back(0.0);
            basis.push_back(std::move(fresh));
        } else {
            beta.push_back(b);
            std::vector<double> next = z;
            for (double& x : next) x /= b;
            basis.push_back(std::move(next));
        }
    }

    if (!have_ritz) ritz = solve_tridiagonal(alpha, beta);
    if (!converged) {
        std::ostringstream msg;
        msg << "truncated_svd did not converge after " << alpha.size()
            << " Lanczos steps (requested k=" << k << ", dim=" << d
            << ", worst relative residual=" << worst_residual << ", tol=" << options.tol << ")";
        throw numeric_error(msg.str());
    }

    const std::size_t jn = alpha.size();
    const double sigma1 = std::sqrt(std::max(ritz.values[0], 0.0));
    if (sigma1 == 0.0) throw numeric_error("truncated_svd: matrix is numerically zero");
    std::size_t keep = 0;
    for (std::size_t i = 0; i < std::min(want, jn); ++i) {
        double s = std::sqrt(std::max(ritz.values[i], 0.0));
        if (s <= sigma1 * options.rank_rel_tol) break;
        ++keep;
    }

    SvdResult result;
    result.k_truncated_to_rank = keep < static_cast<std::size_t>(k);
    result.iterations = static_cast<int>(jn);
    result.max_residual = worst_residual;

    // Ritz vectors on the Lanczos side, polished back to orthonormality.
    std::vector<std::vector<double>> side(keep, std::vector<double>(d, 0.0));
    for (std::size_t i = 0; i < keep; ++i)
        for (std::size_t s = 0; s < jn; ++s)
            if (ritz.vectors.at(s, i) != 0.0) axpy(ritz.vectors.at(s, i), basis[s], side[i]);
    orthonormalize_rows(side);

    result.sigma.resize(keep);
    for (std::size_t i = 0; i < keep; ++i) result.sigma[i] = std::sqrt(std::max(ritz.values[i], 0.0));

    // Derive the other factor through X. Columns with small singular values
    // come out slightly non-orthogonal; the polish restores orthonormality
    // and perturbs each column by no more than that non-orthogonality.
    std::vector<std::vector<double>> other(keep, std::vector<double>(rows_side ? n : m, 0.0));
    for (std::size_t i = 0; i < keep; ++i) {
        if (rows_side)
            X.mul_vec_transpose(side[i], other[i]);
        else
            X.mul_vec(side[i], other[i]);
        for (double& x : other[i]) x /= result.sigma[i];
    }
    orthonormalize_rows(other);

    const auto& u_rows = rows_side ? side : other;
    const auto& v_rows = rows_side ? other : side;
    result.U = DenseMatrix(m, keep);
    result.V = DenseMatrix(n, keep);
    for (std::size_t c = 0; c < keep; ++c) {
        // Sign convention: largest-magnitude component of the U column is
        // positive (first such index on ties).
        std::size_t arg = 0;
        double best = -1;
        for (std::size_t r = 0; r < m; ++r) {
            double a = std::abs(u_rows[c][r]);
            if (a > best) {
                best = a;
                arg = r;
            }
        }
        double sign = u_rows[c][arg] < 0 ? -1.0 : 1.0;
        for (std::size_t r = 0; r < m; ++r) result.U.at(r, c) = sign * u_rows[c][r];
        for (std::size_t r = 0; r < n; ++r) result.V.at(r, c) = sign * v_rows[c][r];
    }
    return result;
}

ConsistencyReport row_cosine_consistency_check(const SparseMatrix& X, const SvdResult& svd,
                                               double tolerance, std::size_t max_pairs) {
    ConsistencyReport report;
    DenseMatrix P = svd.projection();
    const std::size_t m = X.rows();

    std::vector<std::size_t> nonzero;
    for (std::size_t i = 0; i < m; ++i)
        if (!X.row_empty(i)) nonzero.push_back(i);

    // Deterministic sampling: fixed stride over the ordered pair list.
    const std::size_t total = nonzero.size() < 2 ? 0 : nonzero.size() * (nonzero.size() - 1) / 2;
    const std::size_t stride = total > max_pairs ? total / max_pairs : 1;

    std::size_t counter = 0;
    for (std::size_t a = 0; a < nonzero.size(); ++a) {
        for (std::size_t b = a + 1; b < nonzero.size(); ++b) {
            if (counter++ % stride != 0) continue;
            std::size_t i = nonzero[a], j = nonzero[b];
            double cx = X.row_dot(i, j) / (X.row_norm(i) * X.row_norm(j));
            double cp = cosine(P.row(i), P.row(j));
            report.max_deviation = std::max(report.max_deviation, std::abs(cx - cp));
            ++report.pairs_checked;
        }
    }
    report.lossy = report.max_deviation > tolerance;
    return report;
}

}  // namespace relsim
