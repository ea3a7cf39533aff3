#include "spectral/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "spectral/clustering.hpp"
#include "spectral/errors.hpp"
#include "spectral/linalg.hpp"

namespace spectral {

namespace {

// |.|-descending order with the positive value first on magnitude ties.
std::vector<std::size_t> abs_desc_order(const std::vector<double>& vals) {
    std::vector<std::size_t> order(vals.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double aa = std::fabs(vals[a]), ab = std::fabs(vals[b]);
        if (aa != ab) return aa > ab;
        if (vals[a] != vals[b]) return vals[a] > vals[b];
        return a < b;
    });
    // magnitudes equal up to rounding noise are ties: positive first
    double max_abs = 0.0;
    for (double v : vals) max_abs = std::max(max_abs, std::fabs(v));
    const double tie_tol = 1e-12 * max_abs;
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i + 1;
        while (j < order.size() &&
               std::fabs(std::fabs(vals[order[j - 1]]) - std::fabs(vals[order[j]])) <= tie_tol)
            ++j;
        std::sort(order.begin() + i, order.begin() + j, [&](std::size_t a, std::size_t b) {
            if (vals[a] != vals[b]) return vals[a] > vals[b];
            return a < b;
        });
        i = j;
    }
    return order;
}

bool distinct_abs_spectrum(const std::vector<double>& abs_sorted, double tolerance) {
    for (std::size_t i = 0; i + 1 < abs_sorted.size(); ++i)
        if (std::fabs(std::fabs(abs_sorted[i]) - std::fabs(abs_sorted[i + 1])) <= tolerance)
            return false;
    return true;
}

bool tie_at_k(const std::vector<double>& abs_sorted, std::size_t k, double tolerance) {
    if (k >= abs_sorted.size()) return false;
    return std::fabs(std::fabs(abs_sorted[k - 1]) - std::fabs(abs_sorted[k])) <= tolerance;
}

TheoremReport compare_evd_svd(const DenseMatrix& target, const SpectralDecomposition& dec,
                              const SvdResult& sv, std::size_t k, double tolerance) {
    TheoremReport report;
    report.theorem_id = TheoremId::EvdSvdEquivalence;
    report.k = k;
    report.tolerance = tolerance;

    const DenseMatrix evd_k = rank_k_reconstruction(dec, k);
    const DenseMatrix svd_k = rank_k_reconstruction(sv, k);
    report.evd_reconstruction_error = frobenius_distance(evd_k, target);
    report.svd_reconstruction_error = frobenius_distance(svd_k, target);
    report.best_error = best_rank_k_error(sv, k);
    report.gap = frobenius_distance(evd_k, svd_k);
    report.verdict = report.gap <= tolerance ? Verdict::Equal : Verdict::NotEqual;
    report.condition_holds = distinct_abs_spectrum(dec.eigenvalues, tolerance);
    report.has_abs_tie_at_k = tie_at_k(dec.eigenvalues, k, tolerance);
    return report;
}

} // namespace

TheoremReport verify_theorem1(const DenseMatrix& matrix, std::size_t k, double tolerance) {
    const std::size_t n = matrix.rows();
    if (k < 1 || k > n) throw KOutOfRangeError("k must be in [1, N]");
    const SpectralDecomposition dec = symmetric_evd(matrix, SortConvention::AbsDesc);
    const SvdResult sv = svd(matrix);
    return compare_evd_svd(matrix, dec, sv, k, tolerance);
}

TheoremReport verify_theorem1_random_walk(const ValidatedGraph& g, std::size_t k,
                                          double tolerance) {
    const std::size_t n = g.num_nodes();
    if (k < 1 || k > n) throw KOutOfRangeError("k must be in [1, N]");
    const DenseMatrix arw = random_walk_matrix(g);
    const SpectralDecomposition dec =
        evd_random_walk(g, RwTarget::RandomWalkMatrix, SortConvention::AbsDesc);
    const SvdResult sv = svd(arw);
    return compare_evd_svd(arw, dec, sv, k, tolerance);
}

TheoremReport verify_theorem2(const ValidatedGraph& g, std::size_t k, double tolerance) {
    const std::size_t n = g.num_nodes();
    if (k < 1 || k > n) throw KOutOfRangeError("k must be in [1, N]");

    const DenseMatrix target = symmetric_normalized_adjacency(g);
    const SpectralDecomposition dec = symmetric_evd(target, SortConvention::ValueDesc);
    const SvdResult sv = svd(target);

    TheoremReport report;
    report.theorem_id = TheoremId::SpectralClusteringOptimality;
    report.k = k;
    report.tolerance = tolerance;

    // SC selection: the k numerically largest eigenvalues of A_rw, i.e. the
    // k smallest of L_rw.
    report.sc_reconstruction_error =
        frobenius_distance(rank_k_reconstruction(dec, k), target);
    report.svd_reconstruction_error =
        frobenius_distance(rank_k_reconstruction(sv, k), target);
    report.best_error = best_rank_k_error(sv, k);

    const std::vector<std::size_t> abs_order = abs_desc_order(dec.eigenvalues);
    std::vector<double> abs_sorted(n);
    for (std::size_t i = 0; i < n; ++i) abs_sorted[i] = dec.eigenvalues[abs_order[i]];
    const double zt = zero_threshold(target);
    report.condition_holds = true;
    for (std::size_t i = 0; i < k; ++i)
        if (!(abs_sorted[i] > zt)) report.condition_holds = false;
    report.has_abs_tie_at_k = tie_at_k(abs_sorted, k, tolerance);

    // |.|-sorted EVD reconstruction error, for reference alongside the SC one
    {
        DenseMatrix evd_abs_k(n, n);
        for (std::size_t c = 0; c < k; ++c) {
            const std::size_t src = abs_order[c];
            const double lambda = dec.eigenvalues[src];
            for (std::size_t i = 0; i < n; ++i) {
                const double xi = dec.eigenvectors(i, src) * lambda;
                for (std::size_t j = 0; j < n; ++j)
                    evd_abs_k(i, j) += xi * dec.eigenvectors(j, src);
            }
        }
        report.evd_reconstruction_error = frobenius_distance(evd_abs_k, target);
    }

    report.gap = std::fabs(report.sc_reconstruction_error - report.best_error);
    report.verdict = report.gap <= tolerance ? Verdict::Equal : Verdict::NotEqual;
    return report;
}

SpectrumStats eigen_sign_stats(const ValidatedGraph& g) {
    const DenseMatrix asym = symmetric_normalized_adjacency(g);
    const SpectralDecomposition dec = symmetric_evd(asym, SortConvention::AbsDesc);
    SpectrumStats stats;
    stats.n = g.num_nodes();
    stats.zero_tolerance = zero_threshold(asym);
    for (double lambda : dec.eigenvalues) {
        if (std::fabs(lambda) <= stats.zero_tolerance)
            ++stats.num_zero;
        else if (lambda > 0.0)
            ++stats.num_positive;
        else
            ++stats.num_negative;
    }
    stats.positive_fraction =
        static_cast<double>(stats.num_positive) / static_cast<double>(stats.n);
    return stats;
}

double correspondence_check(const ValidatedGraph& g) {
    const std::size_t n = g.num_nodes();
    const SpectralDecomposition dec_a =
        evd_random_walk(g, RwTarget::RandomWalkMatrix, SortConvention::ValueAsc);
    const SpectralDecomposition dec_l =
        evd_random_walk(g, RwTarget::RandomWalkLaplacian, SortConvention::ValueAsc);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dev =
            std::fabs(dec_a.eigenvalues[i] - (1.0 - dec_l.eigenvalues[n - 1 - i]));
        worst = std::max(worst, dev);
    }
    return worst;
}

double smoothness(const ValidatedGraph& g, const std::vector<double>& signal) {
    const std::size_t n = g.num_nodes();
    if (signal.size() != n) throw ShapeMismatchError("signal length must equal node count");
    double dx2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) dx2 += g.degrees()[i] * signal[i] * signal[i];
    if (dx2 == 0.0) throw ZeroSignalError("signal is zero");
    double lx2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double w = g.adjacency()(i, j);
            if (w == 0.0) continue;
            const double d = signal[i] - signal[j];
            lx2 += w * d * d;
        }
    }
    return lx2 / dx2;
}

double smoothness_unnormalized(const ValidatedGraph& g, const std::vector<double>& signal) {
    const std::size_t n = g.num_nodes();
    if (signal.size() != n) throw ShapeMismatchError("signal length must equal node count");
    double x2 = 0.0;
    for (double v : signal) x2 += v * v;
    if (x2 == 0.0) throw ZeroSignalError("signal is zero");
    double lx2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double w = g.adjacency()(i, j);
            if (w == 0.0) continue;
            const double d = signal[i] - signal[j];
            lx2 += w * d * d;
        }
    }
    return lx2 / x2;
}

double nonnormality_gap(const ValidatedGraph& g, std::size_t k) {
    const std::size_t n = g.num_nodes();
    if (k < 1 || k > n) throw KOutOfRangeError("k must be in [1, N]");
    const DenseMatrix arw = random_walk_matrix(g);
    const SpectralDecomposition dec =
        evd_random_walk(g, RwTarget::RandomWalkMatrix, SortConvention::AbsDesc);
    const SvdResult sv = svd(arw);
    return frobenius_distance(rank_k_reconstruction(sv, k), rank_k_reconstruction(dec, k));
}

SmoothnessReport smoothness_report(const ValidatedGraph& g, std::size_t k,
                                   BasisSource source) {
    const std::size_t n = g.num_nodes();
    if (k < 1 || k > n) throw KOutOfRangeError("k must be in [1, N]");
    SmoothnessReport report;
    report.basis_source = source;
    if (source == BasisSource::ScBases) {
        const SpectralEmbedding emb = spectral_embedding(g, k);
        for (std::size_t j = 0; j < k; ++j)
            report.per_basis.push_back(
                {emb.eigenvalues[j], smoothness(g, emb.matrix.column(j))});
    } else {
        const SpectralDecomposition dec =
            evd_random_walk(g, RwTarget::RandomWalkMatrix, SortConvention::AbsDesc);
        for (std::size_t j = 0; j < k; ++j)
            report.per_basis.push_back(
                {dec.eigenvalues[j], smoothness(g, dec.eigenvectors.column(j))});
    }
    return report;
}

} // namespace spectral
