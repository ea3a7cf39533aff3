#pragma once

#include <cstdint>
#include <vector>

#include "spectral/dense_matrix.hpp"
#include "spectral/graph.hpp"

namespace spectral {

struct SpectralEmbedding {
    DenseMatrix matrix;              // N x k, columns = eigenvectors of L_rw
    std::vector<double> eigenvalues; // k smallest, non-decreasing
};

struct ClusterAssignment {
    std::vector<std::size_t> labels; // in [0, k)
    std::size_t k = 0;
    double inertia = 0.0;
    std::size_t iterations = 0;
    double ncut = 0.0;
    std::uint64_t seed = 0;
    std::vector<double> inertia_history; // per Lloyd iteration of the winning restart
};

// Columns are the k eigenvectors of L_rw for the k smallest eigenvalues.
SpectralEmbedding spectral_embedding(const ValidatedGraph& g, std::size_t k);

// Lloyd's algorithm with k-means++ seeding. Deterministic for fixed
// (points, k, seed); distance ties go to the lowest centroid index and
// empty clusters are repaired by stealing the point farthest from its
// centroid.
ClusterAssignment kmeans(const DenseMatrix& points, std::size_t k, std::uint64_t seed,
                         std::size_t max_iterations = 100, double tolerance = 1e-10);

// Best of `restarts` k-means runs (sub-seeds drawn up front from `seed`);
// ties in inertia go to the lowest restart index.
ClusterAssignment kmeans_restarts(const DenseMatrix& points, std::size_t k,
                                  std::uint64_t seed, std::size_t restarts = 10,
                                  std::size_t max_iterations = 100,
                                  double tolerance = 1e-10);

// Shi-Malik objective: sum over clusters of cut(C, ~C) / vol(C).
double normalized_cut(const ValidatedGraph& g, const std::vector<std::size_t>& labels);

// spectral_embedding -> kmeans (with restarts) -> normalized_cut.
ClusterAssignment spectral_cluster(const ValidatedGraph& g, std::size_t k,
                                   std::uint64_t seed);

} // namespace spectral
