#pragma once

#include <vector>

#include "spectral/dense_matrix.hpp"
#include "spectral/graph.hpp"

namespace spectral {

enum class TheoremId { EvdSvdEquivalence, SpectralClusteringOptimality };
enum class Verdict { Equal, NotEqual };

struct TheoremReport {
    TheoremId theorem_id;
    std::size_t k = 0;
    bool condition_holds = false;
    bool has_abs_tie_at_k = false;
    double evd_reconstruction_error = 0.0; // |.|-sorted rank-k EVD vs target
    double svd_reconstruction_error = 0.0; // rank-k SVD vs target
    double sc_reconstruction_error = 0.0;  // value-sorted rank-k (SC selection) vs target
    double best_error = 0.0;               // Eckart-Young optimum
    double gap = 0.0;                      // |difference of the compared errors|
    Verdict verdict = Verdict::NotEqual;
    double tolerance = 0.0;
};

struct SpectrumStats {
    std::size_t n = 0;
    std::size_t num_positive = 0;
    std::size_t num_negative = 0;
    std::size_t num_zero = 0;
    double zero_tolerance = 0.0;
    double positive_fraction = 0.0;
};

enum class BasisSource { ScBases, SvdBases };

struct SmoothnessReport {
    struct Entry {
        double eigenvalue;
        double smoothness;
    };
    std::vector<Entry> per_basis;
    BasisSource basis_source;
};

// Compares the |.|-sorted rank-k EVD reconstruction with the rank-k SVD
// reconstruction of a symmetric matrix. condition_holds reflects the
// distinct-|eigenvalue| hypothesis.
TheoremReport verify_theorem1(const DenseMatrix& matrix, std::size_t k, double tolerance);

// Same comparison on the non-symmetric A_rw of a graph, with eigenpairs
// obtained through the D^1/2 similarity and unit-normalized; this is where
// the equivalence breaks for irregular graphs.
TheoremReport verify_theorem1_random_walk(const ValidatedGraph& g, std::size_t k,
                                          double tolerance);

// Checks whether the spectral-clustering selection (k numerically largest
// eigenvalues of A_rw) attains the optimal rank-k error. Run against the
// symmetric similar form, where the Eckart-Young comparison is exact.
TheoremReport verify_theorem2(const ValidatedGraph& g, std::size_t k, double tolerance);

// Sign counts of the spectrum of A_rw under the shared zero threshold.
SpectrumStats eigen_sign_stats(const ValidatedGraph& g);

// max_i |lambda_i(A_rw) - (1 - lambda_{N+1-i}(L_rw))| with both spectra
// computed by independent solver runs; contract: <= 1e-9.
double correspondence_check(const ValidatedGraph& g);

// Generalized Rayleigh quotient x^T L x / x^T D x; equals the L_rw
// eigenvalue on L_rw eigenvectors, 0 on constants, at most 2.
double smoothness(const ValidatedGraph& g, const std::vector<double>& signal);

// Unnormalized variant x^T L x / x^T x.
double smoothness_unnormalized(const ValidatedGraph& g, const std::vector<double>& signal);

// Frobenius distance between the rank-k SVD and rank-k |.|-sorted EVD
// reconstructions of A_rw; ~0 for regular graphs, positive in general.
double nonnormality_gap(const ValidatedGraph& g, std::size_t k);

// Smoothness of the k spectral-embedding columns (ScBases) or of the
// eigenvectors picked by |.|-descending top-k of A_rw (SvdBases).
SmoothnessReport smoothness_report(const ValidatedGraph& g, std::size_t k,
                                   BasisSource source);

} // namespace spectral
