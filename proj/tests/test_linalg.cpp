#include <doctest.h>

#include <cmath>
#include <cstring>

#include "oracles.hpp"
#include "spectral/errors.hpp"
#include "spectral/graph.hpp"
#include "spectral/linalg.hpp"

using namespace spectral;

TEST_CASE("symmetric_evd: P3 Laplacian spectrum is {0, 1, 3}") {
    const DenseMatrix l = laplacian(make_path(3));
    const SpectralDecomposition dec = symmetric_evd(l, SortConvention::ValueAsc);
    CHECK(std::fabs(dec.eigenvalues[0]) <= 1e-12);
    CHECK(dec.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(dec.eigenvalues[2] == doctest::Approx(3.0).epsilon(1e-12));
    for (double lambda : dec.eigenvalues)
        CHECK(oracles::char_poly_residual(l, lambda) <= 1e-10);
}

TEST_CASE("symmetric_evd: identity and K4's normalized adjacency") {
    const SpectralDecomposition id =
        symmetric_evd(DenseMatrix::identity(3), SortConvention::AbsDesc);
    for (double lambda : id.eigenvalues) CHECK(lambda == doctest::Approx(1.0));

    const DenseMatrix a = symmetric_normalized_adjacency(make_complete(4));
    const SpectralDecomposition dec = symmetric_evd(a, SortConvention::AbsDesc);
    CHECK(dec.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-12));
    for (int i = 1; i < 4; ++i)
        CHECK(dec.eigenvalues[i] == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("symmetric_evd rejects non-symmetric input") {
    DenseMatrix m(2, 2);
    m(0, 1) = 1.0;
    CHECK_THROWS_AS(symmetric_evd(m, SortConvention::ValueAsc), NotSymmetricError);
}

TEST_CASE("evd_random_walk spectra") {
    const SpectralDecomposition p3 =
        evd_random_walk(make_path(3), RwTarget::RandomWalkMatrix, SortConvention::AbsDesc);
    CHECK(p3.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p3.eigenvalues[1] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(std::fabs(p3.eigenvalues[2]) <= 1e-12);
    CHECK_FALSE(p3.source_symmetric);

    const SpectralDecomposition c4 =
        evd_random_walk(make_cycle(4), RwTarget::RandomWalkMatrix, SortConvention::ValueDesc);
    CHECK(c4.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::fabs(c4.eigenvalues[1]) <= 1e-12);
    CHECK(std::fabs(c4.eigenvalues[2]) <= 1e-12);
    CHECK(c4.eigenvalues[3] == doctest::Approx(-1.0).epsilon(1e-12));

    // L_rw always has eigenvalue 0 with a constant eigenvector
    const SpectralDecomposition lrw = evd_random_walk(
        make_barbell(4, 4), RwTarget::RandomWalkLaplacian, SortConvention::ValueAsc);
    CHECK(std::fabs(lrw.eigenvalues[0]) <= 1e-10);
    const std::vector<double> first = lrw.eigenvectors.column(0);
    for (double v : first) CHECK(v == doctest::Approx(first[0]).epsilon(1e-9));
}

TEST_CASE("svd: star fixtures and the zero matrix") {
    const ValidatedGraph star = make_star(4);

    const SvdResult sym = svd(symmetric_normalized_adjacency(star));
    CHECK(sym.s[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sym.s[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::fabs(sym.s[2]) <= 1e-10);
    CHECK(std::fabs(sym.s[3]) <= 1e-10);

    const DenseMatrix arw = random_walk_matrix(star);
    const SvdResult rw = svd(arw);
    CHECK(rw.s[0] == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
    CHECK(rw.s[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
    CHECK(std::fabs(rw.s[2]) <= 1e-10);

    // cross-check against the Gram-matrix route
    const std::vector<double> gram = oracles::gram_singular_values(arw);
    for (int i = 0; i < 4; ++i) CHECK(std::fabs(rw.s[i] - gram[i]) <= 1e-8);

    const SvdResult zero = svd(DenseMatrix(3, 3));
    for (double s : zero.s) CHECK(s == 0.0);
    // U and V are still orthonormal bases
    const DenseMatrix utu = zero.u.transposed().multiply(zero.u);
    for (int i = 0; i < 3; ++i) CHECK(utu(i, i) == doctest::Approx(1.0));
}

TEST_CASE("rank-k reconstruction") {
    const DenseMatrix m = oracles::random_symmetric(8, 42);
    const SvdResult sv = svd(m);
    CHECK(frobenius_distance(rank_k_reconstruction(sv, 8), m) <=
          1e-9 * m.frobenius_norm());

    // k = 1 on K4's normalized adjacency is the constant projection J/4
    const DenseMatrix a = symmetric_normalized_adjacency(make_complete(4));
    const SpectralDecomposition dec = symmetric_evd(a, SortConvention::AbsDesc);
    const DenseMatrix r1 = rank_k_reconstruction(dec, 1);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(r1(i, j) == doctest::Approx(0.25).epsilon(1e-12));

    CHECK_THROWS_AS(rank_k_reconstruction(sv, 0), KOutOfRangeError);
    CHECK_THROWS_AS(rank_k_reconstruction(sv, 9), KOutOfRangeError);
}

TEST_CASE("frobenius_distance basics and the Eckart-Young identity") {
    DenseMatrix i2 = DenseMatrix::identity(2);
    CHECK(frobenius_distance(i2, i2) == 0.0);
    CHECK(frobenius_distance(i2, DenseMatrix(2, 2)) == doctest::Approx(std::sqrt(2.0)));
    CHECK_THROWS_AS(frobenius_distance(i2, DenseMatrix(3, 3)), ShapeMismatchError);

    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const DenseMatrix m = oracles::random_symmetric(8, 100 + seed);
        const SvdResult sv = svd(m);
        for (std::size_t k = 1; k <= 8; ++k) {
            const double err = frobenius_distance(rank_k_reconstruction(sv, k), m);
            CHECK(std::fabs(err - best_rank_k_error(sv, k)) <= 1e-8);
        }
    }
}

TEST_CASE("best_rank_k_error fixtures") {
    const SvdResult p3 = svd(symmetric_normalized_adjacency(make_path(3)));
    CHECK(best_rank_k_error(p3, 3) == 0.0);
    CHECK(best_rank_k_error(p3, 2) <= 1e-10);

    const SvdResult c4 = svd(symmetric_normalized_adjacency(make_cycle(4)));
    CHECK(best_rank_k_error(c4, 1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("property: sigma_i equals |lambda_i| for symmetric matrices") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const std::size_t n = 2 + seed % 12;
        const DenseMatrix m = oracles::random_symmetric(n, 7000 + seed);
        const SpectralDecomposition dec = symmetric_evd(m, SortConvention::AbsDesc);
        const SvdResult sv = svd(m);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(std::fabs(sv.s[i] - std::fabs(dec.eigenvalues[i])) <= 1e-8);
    }
}

TEST_CASE("property: truncated SVD beats random rank-k competitors") {
    const DenseMatrix m = oracles::random_symmetric(8, 9);
    const SvdResult sv = svd(m);
    std::mt19937_64 rng(33);
    for (std::size_t k : {std::size_t{1}, std::size_t{4}, std::size_t{8}}) {
        const double best = best_rank_k_error(sv, k);
        for (int trial = 0; trial < 1000; ++trial) {
            DenseMatrix x(8, k), y(k, 8);
            for (auto& v : x.data()) v = 2.0 * next_unit(rng) - 1.0;
            for (auto& v : y.data()) v = 2.0 * next_unit(rng) - 1.0;
            CHECK(frobenius_distance(x.multiply(y), m) >= best - 1e-8);
        }
    }
}

TEST_CASE("property: decompositions are bitwise deterministic") {
    const DenseMatrix m = oracles::random_symmetric(12, 5);
    const SpectralDecomposition a = symmetric_evd(m, SortConvention::AbsDesc);
    const SpectralDecomposition b = symmetric_evd(m, SortConvention::AbsDesc);
    CHECK(std::memcmp(a.eigenvectors.data().data(), b.eigenvectors.data().data(),
                      sizeof(double) * a.eigenvectors.data().size()) == 0);
    CHECK(a.eigenvalues == b.eigenvalues);

    const SvdResult sa = svd(m);
    const SvdResult sb = svd(m);
    CHECK(sa.s == sb.s);
    CHECK(sa.u.data() == sb.u.data());
    CHECK(sa.v.data() == sb.v.data());
}

TEST_CASE("property: L_rw eigenvalues stay in [0, 2] on fixtures and random graphs") {
    std::vector<ValidatedGraph> graphs;
    graphs.push_back(make_path(9));
    graphs.push_back(make_cycle(8));
    graphs.push_back(make_star(7));
    graphs.push_back(make_complete(6));
    graphs.push_back(make_barbell(5, 5));
    for (std::uint64_t seed = 0; seed < 10; ++seed)
        graphs.push_back(make_erdos_renyi(25, 0.25, seed));
    for (const auto& g : graphs) {
        const auto ev =
            evd_random_walk(g, RwTarget::RandomWalkLaplacian, SortConvention::ValueAsc)
                .eigenvalues;
        CHECK(ev.front() >= -1e-9);
        CHECK(ev.back() <= 2.0 + 1e-9);
    }
}
