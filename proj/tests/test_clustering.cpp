#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "spectral/clustering.hpp"
#include "spectral/errors.hpp"
#include "spectral/graph.hpp"

using namespace spectral;

TEST_CASE("spectral_embedding: constant first column, C4 eigenvalues, barbell structure") {
    const SpectralEmbedding one = spectral_embedding(make_erdos_renyi(12, 0.4, 2), 1);
    const std::vector<double> col = one.matrix.column(0);
    for (double v : col) CHECK(v == doctest::Approx(col[0]).epsilon(1e-9));
    CHECK(std::fabs(one.eigenvalues[0]) <= 1e-9);

    const SpectralEmbedding c4 = spectral_embedding(make_cycle(4), 2);
    CHECK(std::fabs(c4.eigenvalues[0]) <= 1e-9);
    CHECK(c4.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-9));

    // second column separates the two cliques
    const SpectralEmbedding bb = spectral_embedding(make_barbell(5, 5), 2);
    const std::vector<double> fiedler = bb.matrix.column(1);
    auto stats = [&](std::size_t lo, std::size_t hi) {
        double mean = 0.0;
        for (std::size_t i = lo; i < hi; ++i) mean += fiedler[i];
        mean /= static_cast<double>(hi - lo);
        double var = 0.0;
        for (std::size_t i = lo; i < hi; ++i) var += (fiedler[i] - mean) * (fiedler[i] - mean);
        return std::pair{mean, std::sqrt(var / static_cast<double>(hi - lo))};
    };
    const auto [mean_a, sd_a] = stats(0, 5);
    const auto [mean_b, sd_b] = stats(5, 10);
    CHECK(mean_a * mean_b < 0.0); // opposite signs across the bridge
    CHECK(sd_a < std::fabs(mean_a - mean_b));
    CHECK(sd_b < std::fabs(mean_a - mean_b));
}

TEST_CASE("kmeans: separated pairs, degenerate k = N, determinism") {
    DenseMatrix pts(4, 2);
    pts(0, 0) = 0.0;
    pts(1, 0) = 0.1;
    pts(2, 0) = 10.0;
    pts(3, 0) = 10.1;
    for (std::uint64_t seed : {0ULL, 1ULL, 99ULL}) {
        const ClusterAssignment c = kmeans(pts, 2, seed);
        CHECK(c.labels[0] == c.labels[1]);
        CHECK(c.labels[2] == c.labels[3]);
        CHECK(c.labels[0] != c.labels[2]);
    }

    const ClusterAssignment all = kmeans(pts, 4, 0);
    CHECK(all.inertia == 0.0);
    std::vector<std::size_t> sorted = all.labels;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == std::vector<std::size_t>{0, 1, 2, 3});

    const ClusterAssignment a = kmeans(pts, 2, 7);
    const ClusterAssignment b = kmeans(pts, 2, 7);
    CHECK(a.labels == b.labels);
    CHECK(a.inertia == b.inertia);

    CHECK_THROWS_AS(kmeans(pts, 5, 0), KOutOfRangeError);
}

TEST_CASE("kmeans: inertia history is non-increasing") {
    std::mt19937_64 rng(17);
    DenseMatrix pts(40, 3);
    for (auto& v : pts.data()) v = next_unit(rng);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const ClusterAssignment c = kmeans(pts, 4, seed);
        for (std::size_t i = 1; i < c.inertia_history.size(); ++i)
            CHECK(c.inertia_history[i] <= c.inertia_history[i - 1] + 1e-12);
    }
}

TEST_CASE("normalized_cut fixtures and the enumeration oracle") {
    const ValidatedGraph bb = make_barbell(5, 5);
    std::vector<std::size_t> split(10, 0);
    for (int i = 5; i < 10; ++i) split[i] = 1;
    CHECK(normalized_cut(bb, split) == doctest::Approx(2.0 / 21.0).epsilon(1e-14));

    const ValidatedGraph k2 = make_complete(2);
    CHECK(normalized_cut(k2, {0, 1}) == doctest::Approx(2.0).epsilon(1e-15));

    CHECK(normalized_cut(bb, std::vector<std::size_t>(10, 0)) == 0.0);

    // permutation invariance (exact)
    std::vector<std::size_t> swapped(10, 1);
    for (int i = 5; i < 10; ++i) swapped[i] = 0;
    CHECK(normalized_cut(bb, split) == normalized_cut(bb, swapped));

    // oracle agreement on a random graph with random labels
    const ValidatedGraph g = make_erdos_renyi(15, 0.4, 3);
    std::mt19937_64 rng(4);
    std::vector<std::size_t> labels(15);
    for (auto& l : labels) l = next_index(rng, 3);
    for (std::size_t c = 0; c < 3; ++c)
        if (std::count(labels.begin(), labels.end(), c) == 0) labels[c] = c;
    CHECK(normalized_cut(g, labels) ==
          doctest::Approx(oracles::ncut_by_enumeration(g, labels)).epsilon(1e-12));

    CHECK_THROWS_AS(normalized_cut(bb, {0, 2, 2, 2, 2, 2, 2, 2, 2, 2}), EmptyClusterError);
}

TEST_CASE("spectral_cluster: barbell bridge split") {
    const ValidatedGraph bb = make_barbell(5, 5);
    const ClusterAssignment c = spectral_cluster(bb, 2, 0);
    CHECK(c.ncut == doctest::Approx(2.0 / 21.0).epsilon(1e-12));
    for (int i = 0; i < 5; ++i) CHECK(c.labels[i] == c.labels[0]);
    for (int i = 5; i < 10; ++i) CHECK(c.labels[i] == c.labels[5]);
    CHECK(c.labels[0] != c.labels[5]);

    // pipeline determinism
    const ClusterAssignment again = spectral_cluster(bb, 2, 0);
    CHECK(c.labels == again.labels);
    CHECK(c.ncut == again.ncut);
}

TEST_CASE("spectral_cluster: planted partition recovery") {
    const std::size_t n = 60, blocks = 3;
    const ValidatedGraph g = make_planted_partition(n, blocks, 0.9, 0.02, 1);
    const ClusterAssignment c = spectral_cluster(g, blocks, 0);

    std::vector<std::size_t> perm{0, 1, 2};
    std::size_t best = 0;
    do {
        std::size_t agree = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (perm[c.labels[i]] == planted_block_of(i, n, blocks)) ++agree;
        best = std::max(best, agree);
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(static_cast<double>(best) / static_cast<double>(n) >= 0.95);
}

TEST_CASE("spectral_cluster: K6 balanced split value") {
    const ClusterAssignment c = spectral_cluster(make_complete(6), 2, 0);
    // all balanced 3/3 splits are equivalent by symmetry: cut 9, volume 15
    CHECK(c.ncut == doctest::Approx(1.2).epsilon(1e-9));

    // brute force over all bipartitions confirms 3/3 splits minimize NCut
    const ValidatedGraph k6 = make_complete(6);
    double minimum = 1e18;
    for (unsigned mask = 1; mask < 63; ++mask) {
        std::vector<std::size_t> labels(6);
        for (int i = 0; i < 6; ++i) labels[i] = (mask >> i) & 1u;
        minimum = std::min(minimum, oracles::ncut_by_enumeration(k6, labels));
    }
    CHECK(c.ncut == doctest::Approx(minimum).epsilon(1e-9));
}

TEST_CASE("spectral_cluster rejects k out of range") {
    CHECK_THROWS_AS(spectral_cluster(make_path(4), 1, 0), KOutOfRangeError);
    CHECK_THROWS_AS(spectral_cluster(make_path(4), 5, 0), KOutOfRangeError);
}
