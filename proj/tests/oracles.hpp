#pragma once

// Test-only oracles, kept independent of the decomposition paths they check:
// determinants go through plain Gaussian elimination, singular values through
// the Gram matrix, normalized cut through explicit edge enumeration.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "spectral/dense_matrix.hpp"
#include "spectral/graph.hpp"
#include "spectral/linalg.hpp"
#include "spectral/rng.hpp"

namespace oracles {

inline double determinant(spectral::DenseMatrix m) {
    const std::size_t n = m.rows();
    double det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::fabs(m(r, col)) > std::fabs(m(pivot, col))) pivot = r;
        if (m(pivot, col) == 0.0) return 0.0;
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(m(pivot, c), m(col, c));
            det = -det;
        }
        det *= m(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = m(r, col) / m(col, col);
            for (std::size_t c = col; c < n; ++c) m(r, c) -= f * m(col, c);
        }
    }
    return det;
}

// |det(M - lambda I)|; near zero when lambda is an eigenvalue.
inline double char_poly_residual(const spectral::DenseMatrix& m, double lambda) {
    spectral::DenseMatrix shifted = m;
    for (std::size_t i = 0; i < m.rows(); ++i) shifted(i, i) -= lambda;
    return std::fabs(determinant(shifted));
}

// Singular values via the spectrum of M^T M (the route the production SVD
// deliberately avoids).
inline std::vector<double> gram_singular_values(const spectral::DenseMatrix& m) {
    const spectral::DenseMatrix gram = m.transposed().multiply(m);
    const spectral::SpectralDecomposition dec =
        spectral::symmetric_evd(gram, spectral::SortConvention::ValueDesc);
    std::vector<double> out;
    for (double lambda : dec.eigenvalues) out.push_back(std::sqrt(std::max(lambda, 0.0)));
    return out;
}

// NCut by explicit enumeration of all ordered edge endpoints.
inline double ncut_by_enumeration(const spectral::ValidatedGraph& g,
                                  const std::vector<std::size_t>& labels) {
    const std::size_t n = g.num_nodes();
    std::size_t k = 0;
    for (std::size_t l : labels) k = std::max(k, l + 1);
    double total = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
        double cut = 0.0, vol = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (labels[i] != c) continue;
            for (std::size_t j = 0; j < n; ++j) {
                vol += g.adjacency()(i, j);
                if (labels[j] != c) cut += g.adjacency()(i, j);
            }
        }
        total += cut / vol;
    }
    return total;
}

inline spectral::DenseMatrix random_symmetric(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    spectral::DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            m(i, j) = m(j, i) = 2.0 * spectral::next_unit(rng) - 1.0;
    return m;
}

// Random symmetric matrix whose |eigenvalue| gaps all exceed min_gap.
inline spectral::DenseMatrix random_symmetric_distinct_abs(std::size_t n,
                                                           std::uint64_t seed,
                                                           double min_gap = 1e-3) {
    for (std::uint64_t attempt = 0;; ++attempt) {
        spectral::DenseMatrix m = random_symmetric(n, seed * 1000003ULL + attempt);
        const spectral::SpectralDecomposition dec =
            spectral::symmetric_evd(m, spectral::SortConvention::AbsDesc);
        bool ok = true;
        for (std::size_t i = 0; i + 1 < n && ok; ++i) {
            if (std::fabs(std::fabs(dec.eigenvalues[i]) - std::fabs(dec.eigenvalues[i + 1])) <
                min_gap)
                ok = false;
            if (std::fabs(dec.eigenvalues[i] - dec.eigenvalues[i + 1]) < min_gap) ok = false;
        }
        if (ok) return m;
    }
}

inline std::vector<double> sorted_copy(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v;
}

} // namespace oracles
