#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spectral/dense_matrix.hpp"

namespace spectral {

// Undirected weighted graph with dense symmetric adjacency, checked at
// construction time: symmetric, zero diagonal, all degrees positive,
// connected. Immutable after validation; safe to share across threads.
class ValidatedGraph {
public:
    std::size_t num_nodes() const { return adjacency_.rows(); }
    const DenseMatrix& adjacency() const { return adjacency_; }
    const std::vector<double>& degrees() const { return degrees_; }
    const std::vector<std::int64_t>& node_labels() const { return node_labels_; }

    double total_degree() const;

    friend ValidatedGraph validate(const DenseMatrix& adjacency,
                                   std::vector<std::int64_t> node_labels);

private:
    ValidatedGraph(DenseMatrix adjacency, std::vector<double> degrees,
                   std::vector<std::int64_t> node_labels)
        : adjacency_(std::move(adjacency)), degrees_(std::move(degrees)),
          node_labels_(std::move(node_labels)) {}

    DenseMatrix adjacency_;
    std::vector<double> degrees_;
    std::vector<std::int64_t> node_labels_;
};

// Checks symmetry (exact), zero diagonal, non-negative finite weights,
// positive degrees and connectivity (BFS over nonzero entries).
// node_labels defaults to 0..N-1 when empty.
ValidatedGraph validate(const DenseMatrix& adjacency,
                        std::vector<std::int64_t> node_labels = {});

// L = D - A
DenseMatrix laplacian(const ValidatedGraph& g);

// L_rw = I - D^-1 A (rows sum to zero)
DenseMatrix random_walk_laplacian(const ValidatedGraph& g);

// A_rw = D^-1 A (row-stochastic)
DenseMatrix random_walk_matrix(const ValidatedGraph& g);

// A_sym = D^-1/2 A D^-1/2; symmetric and similar to A_rw, so a symmetric
// eigensolver covers the random-walk spectra.
DenseMatrix symmetric_normalized_adjacency(const ValidatedGraph& g);

enum class GraphFamily {
    Path,
    Cycle,
    Complete,
    Star,
    Barbell,
    ErdosRenyi,
    PlantedPartition,
};

struct GeneratorSpec {
    GraphFamily family;
    // Family parameters, in declaration order:
    //   path/cycle/complete/star: n
    //   barbell: m1, m2 (clique sizes, joined by one bridge edge)
    //   erdos_renyi: n, p
    //   planted_partition: n, k_blocks, p_in, p_out (blocks are contiguous
    //   index ranges of near-equal size)
    std::vector<double> params;
};

// Deterministic for fixed (spec, seed); random families resample until
// connected, up to a bounded retry budget.
ValidatedGraph generate(const GeneratorSpec& spec, std::uint64_t seed);

// Parses a generator spec string like "gen:barbell:5,5" or "gen:er:200,0.05".
GeneratorSpec parse_generator_spec(const std::string& text);

// Convenience fixtures
ValidatedGraph make_path(std::size_t n);
ValidatedGraph make_cycle(std::size_t n);
ValidatedGraph make_complete(std::size_t n);
ValidatedGraph make_star(std::size_t n); // n total nodes, center 0
ValidatedGraph make_barbell(std::size_t m1, std::size_t m2);
ValidatedGraph make_erdos_renyi(std::size_t n, double p, std::uint64_t seed);
ValidatedGraph make_planted_partition(std::size_t n, std::size_t k_blocks,
                                      double p_in, double p_out,
                                      std::uint64_t seed);

// Block index of node i in a planted-partition graph generated above.
std::size_t planted_block_of(std::size_t i, std::size_t n, std::size_t k_blocks);

} // namespace spectral
