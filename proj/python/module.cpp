#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spectral/analysis.hpp"
#include "spectral/clustering.hpp"
#include "spectral/errors.hpp"
#include "spectral/graph.hpp"
#include "spectral/io.hpp"
#include "spectral/linalg.hpp"

namespace py = pybind11;
using namespace spectral;

namespace {

DenseMatrix matrix_from_array(const py::array_t<double, py::array::c_style | py::array::forcecast>& arr) {
    if (arr.ndim() != 2) throw ShapeMismatchError("expected a 2-d array");
    const auto rows = static_cast<std::size_t>(arr.shape(0));
    const auto cols = static_cast<std::size_t>(arr.shape(1));
    DenseMatrix m(rows, cols);
    const double* src = arr.data();
    std::copy(src, src + rows * cols, m.data().begin());
    return m;
}

py::array_t<double> array_from_matrix(const DenseMatrix& m) {
    py::array_t<double> arr({m.rows(), m.cols()});
    std::copy(m.data().begin(), m.data().end(), arr.mutable_data());
    return arr;
}

SortConvention convention_of(const std::string& name) {
    if (name == "abs_desc") return SortConvention::AbsDesc;
    if (name == "value_asc") return SortConvention::ValueAsc;
    if (name == "value_desc") return SortConvention::ValueDesc;
    throw InvalidParamsError("sort convention must be abs_desc, value_asc or value_desc");
}

} // namespace

PYBIND11_MODULE(spectralgraph, m) {
    m.doc() = "graph spectra, spectral clustering and rank-k reconstruction analysis";

    py::register_exception<Error>(m, "SpectralError");

    py::class_<ValidatedGraph>(m, "Graph")
        .def_property_readonly("num_nodes", &ValidatedGraph::num_nodes)
        .def_property_readonly("adjacency",
                               [](const ValidatedGraph& g) { return array_from_matrix(g.adjacency()); })
        .def_property_readonly("degrees", &ValidatedGraph::degrees)
        .def_property_readonly("node_labels", &ValidatedGraph::node_labels)
        .def("__repr__", [](const ValidatedGraph& g) {
            return "<Graph with " + std::to_string(g.num_nodes()) + " nodes>";
        });

    m.def("validate", [](const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
        return validate(matrix_from_array(a));
    }, py::arg("adjacency"));

    m.def("generate", [](const std::string& spec, std::uint64_t seed) {
        return generate(parse_generator_spec(spec), seed);
    }, py::arg("spec"), py::arg("seed") = 0, "generate a graph from a spec like gen:barbell:5,5");

    m.def("from_edge_list", &read_graph_text, py::arg("text"), py::arg("drop_self_loops") = false);
    m.def("to_edge_list", &write_edge_list, py::arg("graph"));

    m.def("laplacian", [](const ValidatedGraph& g) { return array_from_matrix(laplacian(g)); });
    m.def("random_walk_laplacian",
          [](const ValidatedGraph& g) { return array_from_matrix(random_walk_laplacian(g)); });
    m.def("random_walk_matrix",
          [](const ValidatedGraph& g) { return array_from_matrix(random_walk_matrix(g)); });
    m.def("symmetric_normalized_adjacency", [](const ValidatedGraph& g) {
        return array_from_matrix(symmetric_normalized_adjacency(g));
    });

    m.def("symmetric_evd", [](const py::array_t<double, py::array::c_style | py::array::forcecast>& a,
                              const std::string& convention) {
        const SpectralDecomposition d = symmetric_evd(matrix_from_array(a), convention_of(convention));
        return py::make_tuple(d.eigenvalues, array_from_matrix(d.eigenvectors));
    }, py::arg("matrix"), py::arg("convention") = "value_asc",
       "returns (eigenvalues, eigenvectors); column i pairs with eigenvalue i");

    m.def("evd_random_walk", [](const ValidatedGraph& g, const std::string& target,
                                const std::string& convention) {
        const RwTarget t = target == "arw" ? RwTarget::RandomWalkMatrix
                                           : RwTarget::RandomWalkLaplacian;
        const SpectralDecomposition d = evd_random_walk(g, t, convention_of(convention));
        return py::make_tuple(d.eigenvalues, array_from_matrix(d.eigenvectors));
    }, py::arg("graph"), py::arg("target") = "lrw", py::arg("convention") = "value_asc");

    m.def("svd", [](const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
        const SvdResult r = svd(matrix_from_array(a));
        return py::make_tuple(array_from_matrix(r.u), r.s, array_from_matrix(r.v));
    }, py::arg("matrix"), "returns (U, S, V) with M = U diag(S) V^T");

    m.def("rank_k_svd", [](const py::array_t<double, py::array::c_style | py::array::forcecast>& a,
                           std::size_t k) {
        return array_from_matrix(rank_k_reconstruction(svd(matrix_from_array(a)), k));
    }, py::arg("matrix"), py::arg("k"));

    m.def("best_rank_k_error", [](const py::array_t<double, py::array::c_style | py::array::forcecast>& a,
                                  std::size_t k) {
        return best_rank_k_error(svd(matrix_from_array(a)), k);
    }, py::arg("matrix"), py::arg("k"));

    m.def("spectral_embedding", [](const ValidatedGraph& g, std::size_t k) {
        const SpectralEmbedding e = spectral_embedding(g, k);
        return py::make_tuple(array_from_matrix(e.matrix), e.eigenvalues);
    }, py::arg("graph"), py::arg("k"));

    py::class_<ClusterAssignment>(m, "ClusterAssignment")
        .def_readonly("labels", &ClusterAssignment::labels)
        .def_readonly("k", &ClusterAssignment::k)
        .def_readonly("inertia", &ClusterAssignment::inertia)
        .def_readonly("iterations", &ClusterAssignment::iterations)
        .def_readonly("ncut", &ClusterAssignment::ncut)
        .def_readonly("seed", &ClusterAssignment::seed);

    m.def("kmeans", [](const py::array_t<double, py::array::c_style | py::array::forcecast>& points,
                       std::size_t k, std::uint64_t seed, std::size_t max_iterations,
                       double tolerance) {
        return kmeans(matrix_from_array(points), k, seed, max_iterations, tolerance);
    }, py::arg("points"), py::arg("k"), py::arg("seed") = 0,
       py::arg("max_iterations") = 100, py::arg("tolerance") = 1e-10);

    m.def("normalized_cut", &normalized_cut, py::arg("graph"), py::arg("labels"));
    m.def("spectral_cluster", &spectral_cluster, py::arg("graph"), py::arg("k"),
          py::arg("seed") = 0);

    py::class_<TheoremReport>(m, "TheoremReport")
        .def_readonly("k", &TheoremReport::k)
        .def_readonly("condition_holds", &TheoremReport::condition_holds)
        .def_readonly("has_abs_tie_at_k", &TheoremReport::has_abs_tie_at_k)
        .def_readonly("evd_reconstruction_error", &TheoremReport::evd_reconstruction_error)
        .def_readonly("svd_reconstruction_error", &TheoremReport::svd_reconstruction_error)
        .def_readonly("sc_reconstruction_error", &TheoremReport::sc_reconstruction_error)
        .def_readonly("best_error", &TheoremReport::best_error)
        .def_readonly("gap", &TheoremReport::gap)
        .def_readonly("tolerance", &TheoremReport::tolerance)
        .def_property_readonly("verdict", [](const TheoremReport& r) {
            return r.verdict == Verdict::Equal ? "EQUAL" : "NOT_EQUAL";
        });

    m.def("verify_theorem1", [](const py::array_t<double, py::array::c_style | py::array::forcecast>& a,
                                std::size_t k, double tolerance) {
        return verify_theorem1(matrix_from_array(a), k, tolerance);
    }, py::arg("matrix"), py::arg("k"), py::arg("tolerance") = 1e-8);
    m.def("verify_theorem1_random_walk", &verify_theorem1_random_walk, py::arg("graph"),
          py::arg("k"), py::arg("tolerance") = 1e-8);
    m.def("verify_theorem2", &verify_theorem2, py::arg("graph"), py::arg("k"),
          py::arg("tolerance") = 1e-8);

    py::class_<SpectrumStats>(m, "SpectrumStats")
        .def_readonly("n", &SpectrumStats::n)
        .def_readonly("num_positive", &SpectrumStats::num_positive)
        .def_readonly("num_negative", &SpectrumStats::num_negative)
        .def_readonly("num_zero", &SpectrumStats::num_zero)
        .def_readonly("zero_tolerance", &SpectrumStats::zero_tolerance)
        .def_readonly("positive_fraction", &SpectrumStats::positive_fraction);

    m.def("eigen_sign_stats", &eigen_sign_stats, py::arg("graph"));
    m.def("correspondence_check", &correspondence_check, py::arg("graph"));
    m.def("smoothness", &smoothness, py::arg("graph"), py::arg("signal"));
    m.def("smoothness_unnormalized", &smoothness_unnormalized, py::arg("graph"),
          py::arg("signal"));
    m.def("nonnormality_gap", &nonnormality_gap, py::arg("graph"), py::arg("k"));

    m.def("smoothness_report", [](const ValidatedGraph& g, std::size_t k,
                                  const std::string& source) {
        const BasisSource s = source == "svd" ? BasisSource::SvdBases : BasisSource::ScBases;
        const SmoothnessReport r = smoothness_report(g, k, s);
        py::list out;
        for (const auto& e : r.per_basis)
            out.append(py::make_tuple(e.eigenvalue, e.smoothness));
        return out;
    }, py::arg("graph"), py::arg("k"), py::arg("source") = "sc",
       "list of (eigenvalue, smoothness) pairs");

    m.attr("__version__") = "0.1.0";
}
