#include "spectral/clustering.hpp"

#include <cmath>
#include <limits>

#include "spectral/errors.hpp"
#include "spectral/linalg.hpp"
#include "spectral/rng.hpp"

namespace spectral {

SpectralEmbedding spectral_embedding(const ValidatedGraph& g, std::size_t k) {
    const std::size_t n = g.num_nodes();
    if (k < 1 || k > n) throw KOutOfRangeError("k must be in [1, N]");
    const SpectralDecomposition dec =
        evd_random_walk(g, RwTarget::RandomWalkLaplacian, SortConvention::ValueAsc);
    SpectralEmbedding emb;
    emb.matrix = dec.eigenvectors.left_columns(k);
    emb.eigenvalues.assign(dec.eigenvalues.begin(), dec.eigenvalues.begin() + k);
    return emb;
}

namespace {

double sq_dist(const DenseMatrix& points, std::size_t row, const std::vector<double>& c) {
    double s = 0.0;
    for (std::size_t j = 0; j < points.cols(); ++j) {
        const double d = points(row, j) - c[j];
        s += d * d;
    }
    return s;
}

std::vector<std::vector<double>> kmeanspp_init(const DenseMatrix& points, std::size_t k,
                                               std::mt19937_64& rng) {
    const std::size_t n = points.rows();
    std::vector<std::vector<double>> centroids;
    centroids.reserve(k);

    std::vector<double> first(points.cols());
    const std::size_t i0 = next_index(rng, n);
    for (std::size_t j = 0; j < points.cols(); ++j) first[j] = points(i0, j);
    centroids.push_back(std::move(first));

    std::vector<double> d2(n);
    while (centroids.size() < k) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& c : centroids) best = std::min(best, sq_dist(points, i, c));
            d2[i] = best;
            total += best;
        }
        std::size_t pick;
        if (total == 0.0) {
            pick = next_index(rng, n);
        } else {
            const double r = next_unit(rng) * total;
            double acc = 0.0;
            pick = n - 1;
            for (std::size_t i = 0; i < n; ++i) {
                acc += d2[i];
                if (acc > r) {
                    pick = i;
                    break;
                }
            }
        }
        std::vector<double> c(points.cols());
        for (std::size_t j = 0; j < points.cols(); ++j) c[j] = points(pick, j);
        centroids.push_back(std::move(c));
    }
    return centroids;
}

} // namespace

ClusterAssignment kmeans(const DenseMatrix& points, std::size_t k, std::uint64_t seed,
                         std::size_t max_iterations, double tolerance) {
    const std::size_t n = points.rows();
    const std::size_t dim = points.cols();
    if (k < 1 || k > n) throw KOutOfRangeError("k must be in [1, N]");
    if (max_iterations < 1) throw InvalidParamsError("max_iterations must be >= 1");
    if (tolerance < 0.0) throw InvalidParamsError("tolerance must be >= 0");

    std::mt19937_64 rng(seed);
    std::vector<std::vector<double>> centroids = kmeanspp_init(points, k, rng);

    ClusterAssignment out;
    out.k = k;
    out.seed = seed;
    out.labels.assign(n, 0);

    for (std::size_t it = 0; it < max_iterations; ++it) {
        // assignment, ties to the lowest centroid index
        double inertia = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            std::size_t arg = 0;
            for (std::size_t c = 0; c < k; ++c) {
                const double d = sq_dist(points, i, centroids[c]);
                if (d < best) {
                    best = d;
                    arg = c;
                }
            }
            out.labels[i] = arg;
            inertia += best;
        }

        // repair empty clusters: steal the point farthest from its centroid
        std::vector<std::size_t> counts(k, 0);
        for (std::size_t lbl : out.labels) ++counts[lbl];
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] > 0) continue;
            double worst = -1.0;
            std::size_t victim = 0;
            for (std::size_t i = 0; i < n; ++i) {
                if (counts[out.labels[i]] <= 1) continue;
                const double d = sq_dist(points, i, centroids[out.labels[i]]);
                if (d > worst) {
                    worst = d;
                    victim = i;
                }
            }
            --counts[out.labels[victim]];
            out.labels[victim] = c;
            ++counts[c];
        }

        out.inertia_history.push_back(inertia);
        out.iterations = it + 1;

        // centroid update
        std::vector<std::vector<double>> next(k, std::vector<double>(dim, 0.0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < dim; ++j)
                next[out.labels[i]][j] += points(i, j);
        double movement = 0.0;
        for (std::size_t c = 0; c < k; ++c) {
            double shift2 = 0.0;
            for (std::size_t j = 0; j < dim; ++j) {
                next[c][j] /= static_cast<double>(counts[c]);
                const double d = next[c][j] - centroids[c][j];
                shift2 += d * d;
            }
            movement = std::max(movement, std::sqrt(shift2));
        }
        centroids = std::move(next);
        if (movement <= tolerance) break;
    }

    // final inertia against the final centroids
    double inertia = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        inertia += sq_dist(points, i, centroids[out.labels[i]]);
    out.inertia = inertia;
    return out;
}

ClusterAssignment kmeans_restarts(const DenseMatrix& points, std::size_t k,
                                  std::uint64_t seed, std::size_t restarts,
                                  std::size_t max_iterations, double tolerance) {
    if (restarts < 1) throw InvalidParamsError("restarts must be >= 1");
    std::mt19937_64 master(seed);
    std::vector<std::uint64_t> sub_seeds(restarts);
    for (auto& s : sub_seeds) s = master();

    ClusterAssignment best;
    bool have = false;
    for (std::size_t r = 0; r < restarts; ++r) {
        ClusterAssignment run = kmeans(points, k, sub_seeds[r], max_iterations, tolerance);
        if (!have || run.inertia < best.inertia) { // strict: ties keep lowest restart
            best = std::move(run);
            have = true;
        }
    }
    best.seed = seed;
    return best;
}

double normalized_cut(const ValidatedGraph& g, const std::vector<std::size_t>& labels) {
    const std::size_t n = g.num_nodes();
    if (labels.size() != n) throw ShapeMismatchError("labels length must equal node count");
    std::size_t k = 0;
    for (std::size_t lbl : labels) k = std::max(k, lbl + 1);
    std::vector<double> cut(k, 0.0), vol(k, 0.0);
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (labels[i] >= k) throw LabelOutOfRangeError("label out of range");
        ++counts[labels[i]];
        vol[labels[i]] += g.degrees()[i];
        for (std::size_t j = 0; j < n; ++j)
            if (labels[j] != labels[i]) cut[labels[i]] += g.adjacency()(i, j);
    }
    for (std::size_t c = 0; c < k; ++c)
        if (counts[c] == 0) throw EmptyClusterError("cluster " + std::to_string(c) + " is empty");
    double total = 0.0;
    for (std::size_t c = 0; c < k; ++c) total += cut[c] / vol[c];
    return total;
}

ClusterAssignment spectral_cluster(const ValidatedGraph& g, std::size_t k,
                                   std::uint64_t seed) {
    if (k < 2 || k > g.num_nodes())
        throw KOutOfRangeError("spectral_cluster requires 2 <= k <= N");
    const SpectralEmbedding emb = spectral_embedding(g, k);
    ClusterAssignment out = kmeans_restarts(emb.matrix, k, seed);
    out.ncut = normalized_cut(g, out.labels);
    return out;
}

} // namespace spectral
