#include "spectral/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "spectral/errors.hpp"

namespace spectral {

namespace {

double hypot2(double a, double b) {
    const double absa = std::fabs(a), absb = std::fabs(b);
    if (absa > absb) {
        const double r = absb / absa;
        return absa * std::sqrt(1.0 + r * r);
    }
    if (absb == 0.0) return 0.0;
    const double r = absa / absb;
    return absb * std::sqrt(1.0 + r * r);
}

// Householder reduction of the symmetric matrix stored in z to tridiagonal
// form; d receives the diagonal, e the subdiagonal (e[0] unused), and z the
// accumulated orthogonal transform.
void tridiagonalize(DenseMatrix& z, std::vector<double>& d, std::vector<double>& e) {
    const std::size_t n = z.rows();
    for (std::size_t i = n - 1; i > 0; --i) {
        const std::size_t l = i - 1;
        double h = 0.0, scale = 0.0;
        if (l > 0) {
            for (std::size_t k = 0; k < i; ++k) scale += std::fabs(z(i, k));
            if (scale == 0.0) {
                e[i] = z(i, l);
            } else {
                for (std::size_t k = 0; k < i; ++k) {
                    z(i, k) /= scale;
                    h += z(i, k) * z(i, k);
                }
                double f = z(i, l);
                double g = (f >= 0.0 ? -std::sqrt(h) : std::sqrt(h));
                e[i] = scale * g;
                h -= f * g;
                z(i, l) = f - g;
                f = 0.0;
                for (std::size_t j = 0; j < i; ++j) {
                    z(j, i) = z(i, j) / h;
                    g = 0.0;
                    for (std::size_t k = 0; k < j + 1; ++k) g += z(j, k) * z(i, k);
                    for (std::size_t k = j + 1; k < i; ++k) g += z(k, j) * z(i, k);
                    e[j] = g / h;
                    f += e[j] * z(i, j);
                }
                const double hh = f / (h + h);
                for (std::size_t j = 0; j < i; ++j) {
                    f = z(i, j);
                    e[j] = g = e[j] - hh * f;
                    for (std::size_t k = 0; k < j + 1; ++k)
                        z(j, k) -= f * e[k] + g * z(i, k);
                }
            }
        } else {
            e[i] = z(i, l);
        }
        d[i] = h;
    }
    d[0] = 0.0;
    e[0] = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (d[i] != 0.0) {
            for (std::size_t j = 0; j < i; ++j) {
                double g = 0.0;
                for (std::size_t k = 0; k < i; ++k) g += z(i, k) * z(k, j);
                for (std::size_t k = 0; k < i; ++k) z(k, j) -= g * z(k, i);
            }
        }
        d[i] = z(i, i);
        z(i, i) = 1.0;
        for (std::size_t j = 0; j < i; ++j) z(j, i) = z(i, j) = 0.0;
    }
}

constexpr int kMaxQlIterations = 50;

// Implicit-shift QL iteration on the tridiagonal (d, e), rotations applied
// to the columns of z.
void ql_implicit_shift(std::vector<double>& d, std::vector<double>& e, DenseMatrix& z) {
    const std::size_t n = d.size();
    const double eps = std::numeric_limits<double>::epsilon();
    for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
        int iter = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
                if (std::fabs(e[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (iter++ == kMaxQlIterations)
                    throw ConvergenceFailureError("QL iteration budget exceeded");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = hypot2(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + (g >= 0.0 ? std::fabs(r) : -std::fabs(r)));
                double s = 1.0, c = 1.0, p = 0.0;
                std::size_t i = m;
                bool underflow = false;
                while (i-- > l) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    e[i + 1] = r = hypot2(f, g);
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    d[i + 1] = g + (p = s * r);
                    g = c * r - b;
                    for (std::size_t k = 0; k < n; ++k) {
                        f = z(k, i + 1);
                        z(k, i + 1) = s * z(k, i) + c * f;
                        z(k, i) = c * z(k, i) - s * f;
                    }
                }
                if (underflow) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

void fix_column_sign(DenseMatrix& x, std::size_t j) {
    const std::size_t n = x.rows();
    std::size_t arg = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = std::fabs(x(i, j));
        if (a > best) { // strict: ties keep the lowest index
            best = a;
            arg = i;
        }
    }
    if (x(arg, j) < 0.0)
        for (std::size_t i = 0; i < n; ++i) x(i, j) = -x(i, j);
}

std::vector<std::size_t> sorted_order(const std::vector<double>& vals, SortConvention conv) {
    std::vector<std::size_t> order(vals.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    switch (conv) {
    case SortConvention::AbsDesc: {
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            const double aa = std::fabs(vals[a]), ab = std::fabs(vals[b]);
            if (aa != ab) return aa > ab;
            if (vals[a] != vals[b]) return vals[a] > vals[b]; // positive first
            return a < b;
        });
        // magnitudes that agree up to rounding noise count as ties, so that
        // the positive-first rule still applies to pairs like {1, -1}
        double max_abs = 0.0;
        for (double v : vals) max_abs = std::max(max_abs, std::fabs(v));
        const double tie_tol = 1e-12 * max_abs;
        for (std::size_t i = 0; i < order.size();) {
            std::size_t j = i + 1;
            while (j < order.size() &&
                   std::fabs(std::fabs(vals[order[j - 1]]) - std::fabs(vals[order[j]])) <=
                       tie_tol)
                ++j;
            std::sort(order.begin() + i, order.begin() + j,
                      [&](std::size_t a, std::size_t b) {
                          if (vals[a] != vals[b]) return vals[a] > vals[b];
                          return a < b;
                      });
            i = j;
        }
        break;
    }
    case SortConvention::ValueAsc:
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (vals[a] != vals[b]) return vals[a] < vals[b];
            return a < b;
        });
        break;
    case SortConvention::ValueDesc:
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (vals[a] != vals[b]) return vals[a] > vals[b];
            return a < b;
        });
        break;
    }
    return order;
}

void check_residuals(const DenseMatrix& m, const std::vector<double>& eigenvalues,
                     const DenseMatrix& x, double bound) {
    const std::size_t n = m.rows();
    const DenseMatrix mx = m.multiply(x);
    for (std::size_t j = 0; j < eigenvalues.size(); ++j) {
        double r2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = mx(i, j) - eigenvalues[j] * x(i, j);
            r2 += r * r;
        }
        if (std::sqrt(r2) > bound)
            throw ConvergenceFailureError("eigenpair residual exceeds bound");
    }
}

void check_orthonormal(const DenseMatrix& x, double bound, const char* what) {
    const DenseMatrix g = x.transposed().multiply(x);
    const std::size_t n = g.rows();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double target = i == j ? 1.0 : 0.0;
            if (std::fabs(g(i, j) - target) > bound)
                throw ConvergenceFailureError(std::string(what) + " not orthonormal");
        }
    }
}

} // namespace

double zero_threshold(const DenseMatrix& m) {
    return 1e-10 * m.frobenius_norm();
}

SpectralDecomposition symmetric_evd(const DenseMatrix& matrix, SortConvention convention) {
    const std::size_t n = matrix.rows();
    if (n == 0 || matrix.cols() != n)
        throw NotSymmetricError("matrix must be square and non-empty");
    if (!matrix.all_finite())
        throw NotSymmetricError("matrix contains non-finite entries");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::fabs(matrix(i, j) - matrix(j, i)) > 1e-12)
                throw NotSymmetricError("matrix deviates from symmetry beyond 1e-12");

    DenseMatrix z = matrix;
    std::vector<double> d(n, 0.0), e(n, 0.0);
    if (n == 1) {
        d[0] = z(0, 0);
        z(0, 0) = 1.0;
    } else {
        tridiagonalize(z, d, e);
        ql_implicit_shift(d, e, z);
    }

    const std::vector<std::size_t> order = sorted_order(d, convention);
    SpectralDecomposition out;
    out.sort_convention = convention;
    out.source_symmetric = true;
    out.eigenvalues.resize(n);
    out.eigenvectors = DenseMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.eigenvalues[j] = d[order[j]];
        for (std::size_t i = 0; i < n; ++i)
            out.eigenvectors(i, j) = z(i, order[j]);
        fix_column_sign(out.eigenvectors, j);
    }

    const double bound = 1e-10 * std::max(matrix.frobenius_norm(), 1e-300);
    check_residuals(matrix, out.eigenvalues, out.eigenvectors, bound);
    check_orthonormal(out.eigenvectors, 1e-10, "eigenvector matrix");
    return out;
}

SpectralDecomposition evd_random_walk(const ValidatedGraph& g, RwTarget target,
                                      SortConvention convention) {
    const std::size_t n = g.num_nodes();
    DenseMatrix sym = symmetric_normalized_adjacency(g);
    if (target == RwTarget::RandomWalkLaplacian) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                sym(i, j) = (i == j ? 1.0 : 0.0) - sym(i, j);
    }
    SpectralDecomposition dec = symmetric_evd(sym, convention);

    // back-transform: x = D^-1/2 u, then renormalize each column
    for (std::size_t j = 0; j < n; ++j) {
        double norm2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            dec.eigenvectors(i, j) /= std::sqrt(g.degrees()[i]);
            norm2 += dec.eigenvectors(i, j) * dec.eigenvectors(i, j);
        }
        const double inv = 1.0 / std::sqrt(norm2);
        for (std::size_t i = 0; i < n; ++i) dec.eigenvectors(i, j) *= inv;
        fix_column_sign(dec.eigenvectors, j);
    }
    dec.source_symmetric = false;

    const DenseMatrix target_matrix = target == RwTarget::RandomWalkLaplacian
                                          ? random_walk_laplacian(g)
                                          : random_walk_matrix(g);
    check_residuals(target_matrix, dec.eigenvalues, dec.eigenvectors,
                    1e-10 * std::max(target_matrix.frobenius_norm(), 1e-300));
    return dec;
}

namespace {

// Appends orthonormal columns built from `candidates` (and canonical basis
// vectors as a last resort) until `basis` has `total` columns. Two-pass
// modified Gram-Schmidt; deterministic candidate order.
void complete_basis(DenseMatrix& basis, std::size_t filled, std::size_t total,
                    const std::vector<std::vector<double>>& candidates) {
    const std::size_t n = basis.rows();
    std::vector<std::vector<double>> pool = candidates;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> e(n, 0.0);
        e[i] = 1.0;
        pool.push_back(std::move(e));
    }
    for (const auto& cand : pool) {
        if (filled == total) break;
        std::vector<double> w = cand;
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t j = 0; j < filled; ++j) {
                double dot = 0.0;
                for (std::size_t i = 0; i < n; ++i) dot += w[i] * basis(i, j);
                for (std::size_t i = 0; i < n; ++i) w[i] -= dot * basis(i, j);
            }
        }
        double norm2 = 0.0;
        for (double v : w) norm2 += v * v;
        const double norm = std::sqrt(norm2);
        if (norm < 1e-6) continue;
        for (std::size_t i = 0; i < n; ++i) basis(i, filled) = w[i] / norm;
        ++filled;
    }
    if (filled != total)
        throw ConvergenceFailureError("failed to complete singular vector basis");
}

} // namespace

SvdResult svd(const DenseMatrix& matrix) {
    const std::size_t n = matrix.rows();
    if (n == 0 || matrix.cols() != n)
        throw ShapeMismatchError("svd expects a square matrix");
    if (!matrix.all_finite())
        throw ShapeMismatchError("matrix contains non-finite entries");

    // Symmetric input: sigma_i = |lambda_i| with shared singular vectors, and
    // deriving U, S, V from the |.|-sorted EVD keeps every rank-k truncation
    // aligned with it even inside degenerate |lambda| blocks, where the
    // embedding route below would pick an arbitrary basis.
    bool symmetric = true;
    for (std::size_t i = 0; i < n && symmetric; ++i)
        for (std::size_t j = i + 1; j < n && symmetric; ++j)
            if (std::fabs(matrix(i, j) - matrix(j, i)) > 1e-12) symmetric = false;
    if (symmetric) {
        const SpectralDecomposition dec = symmetric_evd(matrix, SortConvention::AbsDesc);
        const double zt = zero_threshold(matrix);
        SvdResult out;
        out.u = DenseMatrix(n, n);
        out.v = DenseMatrix(n, n);
        out.s.assign(n, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            const double lambda = dec.eigenvalues[j];
            out.s[j] = std::fabs(lambda) > zt ? std::fabs(lambda) : 0.0;
            const double usign = (out.s[j] > 0.0 && lambda < 0.0) ? -1.0 : 1.0;
            for (std::size_t i = 0; i < n; ++i) {
                out.u(i, j) = usign * dec.eigenvectors(i, j);
                out.v(i, j) = dec.eigenvectors(i, j);
            }
        }
        check_orthonormal(out.u, 1e-10, "left singular vectors");
        check_orthonormal(out.v, 1e-10, "right singular vectors");
        const DenseMatrix recon = rank_k_reconstruction(out, n);
        if (frobenius_distance(recon, matrix) >
            1e-9 * std::max(matrix.frobenius_norm(), 1e-300))
            throw ConvergenceFailureError("SVD reconstruction error exceeds bound");
        return out;
    }

    // Jordan-Wielandt embedding B = [[0, M], [M^T, 0]]
    DenseMatrix b(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            b(i, n + j) = matrix(i, j);
            b(n + j, i) = matrix(i, j);
        }
    }
    const SpectralDecomposition dec = symmetric_evd(b, SortConvention::ValueDesc);

    const double zt = zero_threshold(matrix);
    SvdResult out;
    out.u = DenseMatrix(n, n);
    out.v = DenseMatrix(n, n);
    out.s.assign(n, 0.0);

    std::size_t rank = 0;
    for (std::size_t j = 0; j < n && dec.eigenvalues[j] > zt; ++j, ++rank) {
        out.s[j] = dec.eigenvalues[j];
        double un = 0.0, vn = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double ui = dec.eigenvectors(i, j);
            const double vi = dec.eigenvectors(n + i, j);
            un += ui * ui;
            vn += vi * vi;
        }
        un = std::sqrt(un);
        vn = std::sqrt(vn);
        for (std::size_t i = 0; i < n; ++i) {
            out.u(i, j) = dec.eigenvectors(i, j) / un;
            out.v(i, j) = dec.eigenvectors(n + i, j) / vn;
        }
    }

    if (rank < n) {
        // null directions: halves of the near-zero eigenvectors of B
        std::vector<std::vector<double>> u_cands, v_cands;
        for (std::size_t j = 0; j < 2 * n; ++j) {
            if (std::fabs(dec.eigenvalues[j]) > zt) continue;
            std::vector<double> top(n), bottom(n);
            for (std::size_t i = 0; i < n; ++i) {
                top[i] = dec.eigenvectors(i, j);
                bottom[i] = dec.eigenvectors(n + i, j);
            }
            u_cands.push_back(std::move(top));
            v_cands.push_back(std::move(bottom));
        }
        complete_basis(out.u, rank, n, u_cands);
        complete_basis(out.v, rank, n, v_cands);
    }

    // deterministic signs; for nonzero singular values u and v flip together
    for (std::size_t j = 0; j < n; ++j) {
        if (j < rank) {
            std::size_t arg = 0;
            double best = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double a = std::fabs(out.u(i, j));
                if (a > best) {
                    best = a;
                    arg = i;
                }
            }
            if (out.u(arg, j) < 0.0) {
                for (std::size_t i = 0; i < n; ++i) {
                    out.u(i, j) = -out.u(i, j);
                    out.v(i, j) = -out.v(i, j);
                }
            }
        } else {
            fix_column_sign(out.u, j);
            fix_column_sign(out.v, j);
        }
    }

    check_orthonormal(out.u, 1e-10, "left singular vectors");
    check_orthonormal(out.v, 1e-10, "right singular vectors");
    const DenseMatrix recon = rank_k_reconstruction(out, n);
    if (frobenius_distance(recon, matrix) > 1e-9 * std::max(matrix.frobenius_norm(), 1e-300))
        throw ConvergenceFailureError("SVD reconstruction error exceeds bound");
    return out;
}

DenseMatrix rank_k_reconstruction(const SpectralDecomposition& d, std::size_t k) {
    const std::size_t n = d.eigenvectors.rows();
    if (k < 1 || k > n) throw KOutOfRangeError("k must be in [1, N]");
    DenseMatrix out(n, n);
    for (std::size_t c = 0; c < k; ++c) {
        const double lambda = d.eigenvalues[c];
        for (std::size_t i = 0; i < n; ++i) {
            const double xi = d.eigenvectors(i, c) * lambda;
            if (xi == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j)
                out(i, j) += xi * d.eigenvectors(j, c);
        }
    }
    return out;
}

DenseMatrix rank_k_reconstruction(const SvdResult& d, std::size_t k) {
    const std::size_t n = d.u.rows();
    if (k < 1 || k > n) throw KOutOfRangeError("k must be in [1, N]");
    DenseMatrix out(n, n);
    for (std::size_t c = 0; c < k; ++c) {
        const double sigma = d.s[c];
        if (sigma == 0.0) continue;
        for (std::size_t i = 0; i < n; ++i) {
            const double ui = d.u(i, c) * sigma;
            for (std::size_t j = 0; j < n; ++j)
                out(i, j) += ui * d.v(j, c);
        }
    }
    return out;
}

double best_rank_k_error(const SvdResult& d, std::size_t k) {
    const std::size_t n = d.s.size();
    if (k < 1 || k > n) throw KOutOfRangeError("k must be in [1, N]");
    double sum = 0.0;
    for (std::size_t i = n; i > k; --i) // smallest terms first
        sum += d.s[i - 1] * d.s[i - 1];
    return std::sqrt(sum);
}

} // namespace spectral
