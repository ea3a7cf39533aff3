#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "spectral/analysis.hpp"
#include "spectral/clustering.hpp"
#include "spectral/graph.hpp"

namespace spectral {

struct EdgeListDocument {
    struct Edge {
        std::int64_t u, v;
        double w;
    };
    std::vector<Edge> edges;
    std::size_t comment_count = 0;
};

// One edge per line: `u v [w]` (w defaults to 1.0), `#`/`%` comment lines,
// blank lines ignored. Self-loops raise SelfLoopError unless
// drop_self_loops is set.
EdgeListDocument parse_edge_list(const std::string& text, bool drop_self_loops = false);

// Node ids compacted to 0..N-1 in first-appearance order (originals kept as
// labels); duplicate pairs in either orientation have weights summed.
ValidatedGraph graph_from_edge_list(const EdgeListDocument& doc);

// parse_edge_list + graph_from_edge_list.
ValidatedGraph read_graph_text(const std::string& text, bool drop_self_loops = false);

// Inverse of the reader: one `u v w` line per edge (i < j), original labels,
// 17-significant-digit weights so the round trip is exact.
std::string write_edge_list(const ValidatedGraph& g);

// Dense whitespace-grid adjacency reader (one matrix row per line).
DenseMatrix parse_adjacency_matrix(const std::string& text);

// ---------------------------------------------------------------------------
// Reports

struct Provenance {
    std::string input;          // file path or generator spec
    std::uint64_t seed = 0;
    double tolerance = 1e-8;
    std::string artifact_version = "0.1.0";
};

enum class SpectrumCsvSelection { Laplacian, RandomWalkLaplacian, RandomWalkMatrix };

struct SpectrumReport {
    std::vector<double> laplacian_eigenvalues;      // ascending
    std::vector<double> lrw_eigenvalues;            // ascending
    std::vector<double> arw_eigenvalues;            // |.|-descending
    std::vector<double> arw_singular_values;        // descending
    // which spectrum the CSV rendering emits (JSON always carries all four)
    SpectrumCsvSelection csv_selection = SpectrumCsvSelection::RandomWalkLaplacian;
};

struct TheoremSweep {
    std::vector<TheoremReport> reports; // sorted by k
};

struct SmoothnessComparison {
    SmoothnessReport sc;  // ScBases
    SmoothnessReport svd; // SvdBases
};

using ReportPayload = std::variant<SpectrumReport, ClusterAssignment, TheoremReport,
                                   TheoremSweep, SpectrumStats, SmoothnessComparison>;

struct ReportDocument {
    std::string schema_version = "1";
    ReportPayload payload;
    Provenance provenance;
};

enum class ReportFormat { Json, Csv };

// JSON: one object, keys sorted lexicographically, floats with 17
// significant digits, newline-terminated. CSV: header row plus data rows
// with the same float rendering (provenance is JSON-only).
std::string write_report(const ReportDocument& doc, ReportFormat format);

ReportDocument parse_report_json(const std::string& text);

// %.17g rendering shared by every serializer.
std::string format_double(double x);

} // namespace spectral
