#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "spectral/analysis.hpp"
#include "spectral/clustering.hpp"
#include "spectral/errors.hpp"
#include "spectral/graph.hpp"
#include "spectral/io.hpp"
#include "spectral/linalg.hpp"

namespace {

struct CommonOpts {
    std::string input;
    std::uint64_t seed = 0;
    double tolerance = 1e-8;
    std::string output; // empty = stdout
    std::string format = "json";
    bool drop_self_loops = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("input", opts.input,
                    "graph file (edge list) or generator spec like gen:barbell:5,5")
        ->required();
    cmd->add_option("--seed", opts.seed, "PRNG seed for generators and k-means");
    cmd->add_option("--tolerance", opts.tolerance, "Frobenius comparison tolerance");
    cmd->add_option("-o,--output", opts.output, "output path (default: stdout)");
    cmd->add_option("--format", opts.format, "report format")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_flag("--drop-self-loops", opts.drop_self_loops,
                  "silently drop self-loop lines in edge-list input");
}

spectral::ValidatedGraph load_graph(const CommonOpts& opts) {
    if (opts.input.rfind("gen:", 0) == 0) {
        return spectral::generate(spectral::parse_generator_spec(opts.input), opts.seed);
    }
    std::ifstream in(opts.input, std::ios::binary);
    if (!in) throw spectral::InvalidParamsError("cannot open input file: " + opts.input);
    std::ostringstream buf;
    buf << in.rdbuf();
    return spectral::read_graph_text(buf.str(), opts.drop_self_loops);
}

spectral::Provenance provenance_of(const CommonOpts& opts) {
    spectral::Provenance prov;
    prov.input = opts.input;
    prov.seed = opts.seed;
    prov.tolerance = opts.tolerance;
    return prov;
}

int emit(const spectral::ReportDocument& doc, const CommonOpts& opts) {
    const auto format = opts.format == "csv" ? spectral::ReportFormat::Csv
                                             : spectral::ReportFormat::Json;
    const std::string text = spectral::write_report(doc, format);
    if (opts.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(opts.output, std::ios::binary);
        if (!out) throw spectral::InvalidParamsError("cannot open output file: " + opts.output);
        out << text;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"graph spectral analysis: spectra, clustering and rank-k comparisons"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::size_t k = 0;
    std::string matrix_sel = "lrw";
    std::string theorem = "thm2";
    bool sweep = false;
    std::string expect;

    CLI::App* spectra = app.add_subcommand(
        "spectra", "full spectra of L, L_rw, A_rw and singular values of A_rw");
    add_common(spectra, opts);
    spectra->add_option("--matrix", matrix_sel, "spectrum used for CSV output")
        ->check(CLI::IsMember({"laplacian", "lrw", "arw"}));

    CLI::App* cluster = app.add_subcommand("cluster", "spectral clustering (Shi-Malik)");
    add_common(cluster, opts);
    cluster->add_option("--k", k, "number of clusters")->required();

    CLI::App* verify = app.add_subcommand("verify", "rank-k reconstruction comparisons");
    verify->add_option("theorem", theorem, "thm1 or thm2")
        ->required()
        ->check(CLI::IsMember({"thm1", "thm2"}));
    add_common(verify, opts);
    auto* k_opt = verify->add_option("--k", k, "rank of the comparison");
    auto* sweep_opt = verify->add_flag("--sweep", sweep, "run every k in [1, N]");
    auto* expect_opt =
        verify->add_option("--expect", expect, "exit 3 unless the verdict matches")
            ->check(CLI::IsMember({"equal", "not_equal"}));
    sweep_opt->excludes(k_opt)->excludes(expect_opt);

    CLI::App* signstats = app.add_subcommand("signstats", "eigenvalue sign counts of A_rw");
    add_common(signstats, opts);

    CLI::App* smoothness = app.add_subcommand(
        "smoothness", "Rayleigh-quotient smoothness of SC vs SVD-selected bases");
    add_common(smoothness, opts);
    smoothness->add_option("--k", k, "number of basis vectors")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const spectral::ValidatedGraph g = load_graph(opts);
        const std::size_t n = g.num_nodes();
        spectral::ReportDocument doc;
        doc.provenance = provenance_of(opts);

        if (spectra->parsed()) {
            spectral::SpectrumReport r;
            r.laplacian_eigenvalues =
                spectral::symmetric_evd(spectral::laplacian(g),
                                        spectral::SortConvention::ValueAsc)
                    .eigenvalues;
            r.lrw_eigenvalues =
                spectral::evd_random_walk(g, spectral::RwTarget::RandomWalkLaplacian,
                                          spectral::SortConvention::ValueAsc)
                    .eigenvalues;
            r.arw_eigenvalues =
                spectral::evd_random_walk(g, spectral::RwTarget::RandomWalkMatrix,
                                          spectral::SortConvention::AbsDesc)
                    .eigenvalues;
            r.arw_singular_values = spectral::svd(spectral::random_walk_matrix(g)).s;
            r.csv_selection = matrix_sel == "laplacian"
                                  ? spectral::SpectrumCsvSelection::Laplacian
                              : matrix_sel == "arw"
                                  ? spectral::SpectrumCsvSelection::RandomWalkMatrix
                                  : spectral::SpectrumCsvSelection::RandomWalkLaplacian;
            doc.payload = std::move(r);
            return emit(doc, opts);
        }

        if (cluster->parsed()) {
            doc.payload = spectral::spectral_cluster(g, k, opts.seed);
            return emit(doc, opts);
        }

        if (verify->parsed()) {
            auto run_one = [&](std::size_t kk) {
                return theorem == "thm1"
                           ? spectral::verify_theorem1_random_walk(g, kk, opts.tolerance)
                           : spectral::verify_theorem2(g, kk, opts.tolerance);
            };
            if (sweep) {
                spectral::TheoremSweep sw;
                for (std::size_t kk = 1; kk <= n; ++kk) sw.reports.push_back(run_one(kk));
                doc.payload = std::move(sw);
                return emit(doc, opts);
            }
            if (k == 0)
                throw spectral::KOutOfRangeError("--k is required unless --sweep is given");
            const spectral::TheoremReport report = run_one(k);
            doc.payload = report;
            const int rc = emit(doc, opts);
            if (!expect.empty()) {
                const bool want_equal = expect == "equal";
                if ((report.verdict == spectral::Verdict::Equal) != want_equal) return 3;
            }
            return rc;
        }

        if (signstats->parsed()) {
            doc.payload = spectral::eigen_sign_stats(g);
            return emit(doc, opts);
        }

        if (smoothness->parsed()) {
            spectral::SmoothnessComparison r;
            r.sc = spectral::smoothness_report(g, k, spectral::BasisSource::ScBases);
            r.svd = spectral::smoothness_report(g, k, spectral::BasisSource::SvdBases);
            doc.payload = std::move(r);
            return emit(doc, opts);
        }
    } catch (const spectral::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
