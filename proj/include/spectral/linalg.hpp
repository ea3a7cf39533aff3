#pragma once

#include <vector>

#include "spectral/dense_matrix.hpp"
#include "spectral/graph.hpp"

namespace spectral {

enum class SortConvention {
    AbsDesc,  // |l1| >= |l2| >= ...; on |.| ties the positive value first
    ValueAsc, // l1 <= l2 <= ...
    ValueDesc // l1 >= l2 >= ...
};

struct SpectralDecomposition {
    std::vector<double> eigenvalues;
    DenseMatrix eigenvectors; // column i pairs with eigenvalues[i]
    SortConvention sort_convention;
    bool source_symmetric;
};

struct SvdResult {
    DenseMatrix u;
    std::vector<double> s; // descending, non-negative
    DenseMatrix v;
};

// Magnitudes at or below this are treated as exact zeros when classifying
// eigenvalue signs and SVD null directions.
double zero_threshold(const DenseMatrix& m);

// Full eigendecomposition of a symmetric matrix via Householder
// tridiagonalization and implicit-shift QL iteration. Deterministic,
// including eigenvector signs: the largest-magnitude entry of each
// eigenvector is made non-negative (ties broken by lowest index).
SpectralDecomposition symmetric_evd(const DenseMatrix& matrix, SortConvention convention);

enum class RwTarget {
    RandomWalkLaplacian, // L_rw = I - D^-1 A
    RandomWalkMatrix     // A_rw = D^-1 A
};

// Eigendecomposition of L_rw or A_rw through the symmetric similar form
// D^-1/2 A D^-1/2; eigenvectors are back-transformed by D^-1/2 and
// renormalized to unit 2-norm. The residual bound is enforced against the
// non-symmetric target itself.
SpectralDecomposition evd_random_walk(const ValidatedGraph& g, RwTarget target,
                                      SortConvention convention);

// SVD of a square matrix via the symmetric embedding [[0, M], [M^T, 0]].
// Singular values equal the non-negative eigenvalues of the embedding; null
// directions are completed by Gram-Schmidt so U and V are full orthonormal
// bases even for rank-deficient input.
SvdResult svd(const DenseMatrix& matrix);

// X_k Lambda_k X_k^T over the first k columns under the decomposition's
// sort convention.
DenseMatrix rank_k_reconstruction(const SpectralDecomposition& d, std::size_t k);

// U_k S_k V_k^T.
DenseMatrix rank_k_reconstruction(const SvdResult& d, std::size_t k);

// sqrt(sum_{i>k} s_i^2), the optimal rank-k Frobenius error.
double best_rank_k_error(const SvdResult& d, std::size_t k);

} // namespace spectral
