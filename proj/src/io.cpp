#include "spectral/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include <json.hpp>

#include "spectral/errors.hpp"

namespace spectral {

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

// ---------------------------------------------------------------------------
// Edge lists

namespace {

bool parse_node_id(const std::string& token, std::int64_t& out) {
    if (token.empty()) return false;
    for (char c : token)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    try {
        out = std::stoll(token);
    } catch (const std::exception&) {
        return false;
    }
    return true;
}

} // namespace

EdgeListDocument parse_edge_list(const std::string& text, bool drop_self_loops) {
    EdgeListDocument doc;
    std::istringstream stream(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue; // blank
        if (first[0] == '#' || first[0] == '%') {
            ++doc.comment_count;
            continue;
        }
        std::string second, third, extra;
        if (!(ls >> second))
            throw ParseError(line_no, "expected `u v [w]`");
        double w = 1.0;
        if (ls >> third) {
            try {
                std::size_t pos = 0;
                w = std::stod(third, &pos);
                if (pos != third.size()) throw std::invalid_argument(third);
            } catch (const std::exception&) {
                throw ParseError(line_no, "malformed weight: " + third);
            }
            if (!(w > 0.0) || !std::isfinite(w))
                throw ParseError(line_no, "weight must be a positive finite real");
        }
        if (ls >> extra) throw ParseError(line_no, "trailing token: " + extra);

        std::int64_t u, v;
        if (!parse_node_id(first, u))
            throw ParseError(line_no, "node id must be a non-negative integer: " + first);
        if (!parse_node_id(second, v))
            throw ParseError(line_no, "node id must be a non-negative integer: " + second);
        if (u == v) {
            if (drop_self_loops) continue;
            throw SelfLoopError("self-loop at line " + std::to_string(line_no) +
                                ": node " + std::to_string(u));
        }
        doc.edges.push_back({u, v, w});
    }
    return doc;
}

ValidatedGraph graph_from_edge_list(const EdgeListDocument& doc) {
    // compact ids in ascending numeric order so that a serialized graph with
    // dense ids parses back to the identical adjacency matrix
    std::map<std::int64_t, std::size_t> index; // id -> compact index
    for (const auto& e : doc.edges) {
        index.emplace(e.u, 0);
        index.emplace(e.v, 0);
    }
    std::vector<std::int64_t> labels;
    labels.reserve(index.size());
    for (auto& [id, idx] : index) {
        idx = labels.size();
        labels.push_back(id);
    }
    std::vector<std::pair<std::size_t, std::size_t>> compact;
    compact.reserve(doc.edges.size());
    for (const auto& e : doc.edges)
        compact.emplace_back(index.at(e.u), index.at(e.v));

    const std::size_t n = labels.size();
    if (n == 0) throw InvalidParamsError("edge list is empty");
    DenseMatrix a(n, n);
    for (std::size_t i = 0; i < doc.edges.size(); ++i) {
        a(compact[i].first, compact[i].second) += doc.edges[i].w;
        a(compact[i].second, compact[i].first) = a(compact[i].first, compact[i].second);
    }
    return validate(a, std::move(labels));
}

ValidatedGraph read_graph_text(const std::string& text, bool drop_self_loops) {
    return graph_from_edge_list(parse_edge_list(text, drop_self_loops));
}

std::string write_edge_list(const ValidatedGraph& g) {
    std::string out;
    const std::size_t n = g.num_nodes();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double w = g.adjacency()(i, j);
            if (w == 0.0) continue;
            out += std::to_string(g.node_labels()[i]);
            out += ' ';
            out += std::to_string(g.node_labels()[j]);
            out += ' ';
            out += format_double(w);
            out += '\n';
        }
    }
    return out;
}

DenseMatrix parse_adjacency_matrix(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream stream(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::vector<double> row;
        std::string token;
        while (ls >> token) {
            try {
                std::size_t pos = 0;
                row.push_back(std::stod(token, &pos));
                if (pos != token.size()) throw std::invalid_argument(token);
            } catch (const std::exception&) {
                throw ParseError(line_no, "malformed entry: " + token);
            }
        }
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError(1, "empty matrix");
    const std::size_t n = rows.size();
    DenseMatrix m(n, rows[0].size());
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != m.cols())
            throw ParseError(i + 1, "ragged row");
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
    }
    return m;
}

// ---------------------------------------------------------------------------
// Report serialization. Objects are emitted with keys already in sorted
// order; floats go through format_double so output is byte-stable.

namespace {

void append_escaped(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                out += buf;
            } else {
                out += c;
            }
        }
    }
    out += '"';
}

void append_doubles(std::string& out, const std::vector<double>& v) {
    out += '[';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += format_double(v[i]);
    }
    out += ']';
}

const char* theorem_id_name(TheoremId id) {
    return id == TheoremId::EvdSvdEquivalence ? "thm1" : "thm2";
}

const char* verdict_name(Verdict v) {
    return v == Verdict::Equal ? "EQUAL" : "NOT_EQUAL";
}

const char* csv_selection_name(SpectrumCsvSelection s) {
    switch (s) {
    case SpectrumCsvSelection::Laplacian: return "laplacian";
    case SpectrumCsvSelection::RandomWalkLaplacian: return "lrw";
    case SpectrumCsvSelection::RandomWalkMatrix: return "arw";
    }
    return "lrw";
}

void append_theorem_json(std::string& out, const TheoremReport& r) {
    out += "{\"best_error\":";
    out += format_double(r.best_error);
    out += ",\"condition_holds\":";
    out += r.condition_holds ? "true" : "false";
    out += ",\"evd_reconstruction_error\":";
    out += format_double(r.evd_reconstruction_error);
    out += ",\"gap\":";
    out += format_double(r.gap);
    out += ",\"has_abs_tie_at_k\":";
    out += r.has_abs_tie_at_k ? "true" : "false";
    out += ",\"k\":";
    out += std::to_string(r.k);
    out += ",\"sc_reconstruction_error\":";
    out += format_double(r.sc_reconstruction_error);
    out += ",\"svd_reconstruction_error\":";
    out += format_double(r.svd_reconstruction_error);
    out += ",\"theorem_id\":\"";
    out += theorem_id_name(r.theorem_id);
    out += "\",\"tolerance\":";
    out += format_double(r.tolerance);
    out += ",\"verdict\":\"";
    out += verdict_name(r.verdict);
    out += "\"}";
}

void append_smoothness_entries(std::string& out, const SmoothnessReport& r) {
    out += '[';
    for (std::size_t i = 0; i < r.per_basis.size(); ++i) {
        if (i) out += ',';
        out += "{\"eigenvalue\":";
        out += format_double(r.per_basis[i].eigenvalue);
        out += ",\"smoothness\":";
        out += format_double(r.per_basis[i].smoothness);
        out += '}';
    }
    out += ']';
}

struct PayloadJson {
    std::string& out;

    void operator()(const SpectrumReport& r) const {
        out += "{\"arw_eigenvalues\":";
        append_doubles(out, r.arw_eigenvalues);
        out += ",\"arw_singular_values\":";
        append_doubles(out, r.arw_singular_values);
        out += ",\"csv_selection\":\"";
        out += csv_selection_name(r.csv_selection);
        out += "\",\"laplacian_eigenvalues\":";
        append_doubles(out, r.laplacian_eigenvalues);
        out += ",\"lrw_eigenvalues\":";
        append_doubles(out, r.lrw_eigenvalues);
        out += '}';
    }

    void operator()(const ClusterAssignment& r) const {
        out += "{\"inertia\":";
        out += format_double(r.inertia);
        out += ",\"iterations\":";
        out += std::to_string(r.iterations);
        out += ",\"k\":";
        out += std::to_string(r.k);
        out += ",\"labels\":[";
        for (std::size_t i = 0; i < r.labels.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(r.labels[i]);
        }
        out += "],\"ncut\":";
        out += format_double(r.ncut);
        out += ",\"seed\":";
        out += std::to_string(r.seed);
        out += '}';
    }

    void operator()(const TheoremReport& r) const { append_theorem_json(out, r); }

    void operator()(const TheoremSweep& r) const {
        out += "{\"reports\":[";
        for (std::size_t i = 0; i < r.reports.size(); ++i) {
            if (i) out += ',';
            append_theorem_json(out, r.reports[i]);
        }
        out += "]}";
    }

    void operator()(const SpectrumStats& r) const {
        out += "{\"n\":";
        out += std::to_string(r.n);
        out += ",\"num_negative\":";
        out += std::to_string(r.num_negative);
        out += ",\"num_positive\":";
        out += std::to_string(r.num_positive);
        out += ",\"num_zero\":";
        out += std::to_string(r.num_zero);
        out += ",\"positive_fraction\":";
        out += format_double(r.positive_fraction);
        out += ",\"zero_tolerance\":";
        out += format_double(r.zero_tolerance);
        out += '}';
    }

    void operator()(const SmoothnessComparison& r) const {
        out += "{\"sc_bases\":";
        append_smoothness_entries(out, r.sc);
        out += ",\"svd_bases\":";
        append_smoothness_entries(out, r.svd);
        out += '}';
    }
};

const char* payload_type_name(const ReportPayload& p) {
    struct Visitor {
        const char* operator()(const SpectrumReport&) const { return "spectrum"; }
        const char* operator()(const ClusterAssignment&) const { return "cluster_assignment"; }
        const char* operator()(const TheoremReport&) const { return "theorem"; }
        const char* operator()(const TheoremSweep&) const { return "theorem_sweep"; }
        const char* operator()(const SpectrumStats&) const { return "spectrum_stats"; }
        const char* operator()(const SmoothnessComparison&) const { return "smoothness"; }
    };
    return std::visit(Visitor{}, p);
}

std::string theorem_csv_header() {
    return "k,theorem_id,condition_holds,has_abs_tie_at_k,evd_reconstruction_error,"
           "svd_reconstruction_error,sc_reconstruction_error,best_error,gap,verdict,"
           "tolerance\n";
}

void append_theorem_csv_row(std::string& out, const TheoremReport& r) {
    out += std::to_string(r.k);
    out += ',';
    out += theorem_id_name(r.theorem_id);
    out += ',';
    out += r.condition_holds ? "true" : "false";
    out += ',';
    out += r.has_abs_tie_at_k ? "true" : "false";
    out += ',';
    out += format_double(r.evd_reconstruction_error);
    out += ',';
    out += format_double(r.svd_reconstruction_error);
    out += ',';
    out += format_double(r.sc_reconstruction_error);
    out += ',';
    out += format_double(r.best_error);
    out += ',';
    out += format_double(r.gap);
    out += ',';
    out += verdict_name(r.verdict);
    out += ',';
    out += format_double(r.tolerance);
    out += '\n';
}

struct PayloadCsv {
    std::string& out;

    void operator()(const SpectrumReport& r) const {
        const std::vector<double>* vals = nullptr;
        switch (r.csv_selection) {
        case SpectrumCsvSelection::Laplacian: vals = &r.laplacian_eigenvalues; break;
        case SpectrumCsvSelection::RandomWalkLaplacian: vals = &r.lrw_eigenvalues; break;
        case SpectrumCsvSelection::RandomWalkMatrix: vals = &r.arw_eigenvalues; break;
        }
        const bool with_sv = r.csv_selection == SpectrumCsvSelection::RandomWalkMatrix;
        out += with_sv ? "index,eigenvalue,singular_value\n" : "index,eigenvalue\n";
        for (std::size_t i = 0; i < vals->size(); ++i) {
            out += std::to_string(i);
            out += ',';
            out += format_double((*vals)[i]);
            if (with_sv) {
                out += ',';
                out += format_double(r.arw_singular_values[i]);
            }
            out += '\n';
        }
    }

    void operator()(const ClusterAssignment& r) const {
        out += "node,label\n";
        for (std::size_t i = 0; i < r.labels.size(); ++i) {
            out += std::to_string(i);
            out += ',';
            out += std::to_string(r.labels[i]);
            out += '\n';
        }
    }

    void operator()(const TheoremReport& r) const {
        out += theorem_csv_header();
        append_theorem_csv_row(out, r);
    }

    void operator()(const TheoremSweep& r) const {
        out += theorem_csv_header();
        for (const auto& rep : r.reports) append_theorem_csv_row(out, rep);
    }

    void operator()(const SpectrumStats& r) const {
        out += "n,num_positive,num_negative,num_zero,positive_fraction,zero_tolerance\n";
        out += std::to_string(r.n);
        out += ',';
        out += std::to_string(r.num_positive);
        out += ',';
        out += std::to_string(r.num_negative);
        out += ',';
        out += std::to_string(r.num_zero);
        out += ',';
        out += format_double(r.positive_fraction);
        out += ',';
        out += format_double(r.zero_tolerance);
        out += '\n';
    }

    void operator()(const SmoothnessComparison& r) const {
        out += "basis_source,index,eigenvalue,smoothness\n";
        auto rows = [&](const char* name, const SmoothnessReport& rep) {
            for (std::size_t i = 0; i < rep.per_basis.size(); ++i) {
                out += name;
                out += ',';
                out += std::to_string(i);
                out += ',';
                out += format_double(rep.per_basis[i].eigenvalue);
                out += ',';
                out += format_double(rep.per_basis[i].smoothness);
                out += '\n';
            }
        };
        rows("sc", r.sc);
        rows("svd", r.svd);
    }
};

} // namespace

std::string write_report(const ReportDocument& doc, ReportFormat format) {
    std::string out;
    if (format == ReportFormat::Csv) {
        std::visit(PayloadCsv{out}, doc.payload);
        return out;
    }
    out += "{\"payload\":";
    std::visit(PayloadJson{out}, doc.payload);
    out += ",\"payload_type\":\"";
    out += payload_type_name(doc.payload);
    out += "\",\"provenance\":{\"artifact_version\":";
    append_escaped(out, doc.provenance.artifact_version);
    out += ",\"input\":";
    append_escaped(out, doc.provenance.input);
    out += ",\"seed\":";
    out += std::to_string(doc.provenance.seed);
    out += ",\"tolerance\":";
    out += format_double(doc.provenance.tolerance);
    out += "},\"schema_version\":";
    append_escaped(out, doc.schema_version);
    out += "}\n";
    return out;
}

namespace {

using nlohmann::json;

std::vector<double> doubles_of(const json& j) {
    std::vector<double> out;
    for (const auto& v : j) out.push_back(v.get<double>());
    return out;
}

TheoremReport theorem_of(const json& j) {
    TheoremReport r;
    r.best_error = j.at("best_error").get<double>();
    r.condition_holds = j.at("condition_holds").get<bool>();
    r.evd_reconstruction_error = j.at("evd_reconstruction_error").get<double>();
    r.gap = j.at("gap").get<double>();
    r.has_abs_tie_at_k = j.at("has_abs_tie_at_k").get<bool>();
    r.k = j.at("k").get<std::size_t>();
    r.sc_reconstruction_error = j.at("sc_reconstruction_error").get<double>();
    r.svd_reconstruction_error = j.at("svd_reconstruction_error").get<double>();
    r.theorem_id = j.at("theorem_id").get<std::string>() == "thm1"
                       ? TheoremId::EvdSvdEquivalence
                       : TheoremId::SpectralClusteringOptimality;
    r.tolerance = j.at("tolerance").get<double>();
    r.verdict = j.at("verdict").get<std::string>() == "EQUAL" ? Verdict::Equal
                                                              : Verdict::NotEqual;
    return r;
}

SmoothnessReport smoothness_of(const json& j, BasisSource source) {
    SmoothnessReport r;
    r.basis_source = source;
    for (const auto& e : j)
        r.per_basis.push_back(
            {e.at("eigenvalue").get<double>(), e.at("smoothness").get<double>()});
    return r;
}

} // namespace

ReportDocument parse_report_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(1, std::string("invalid JSON: ") + e.what());
    }
    ReportDocument doc;
    try {
        doc.schema_version = j.at("schema_version").get<std::string>();
        const json& prov = j.at("provenance");
        doc.provenance.artifact_version = prov.at("artifact_version").get<std::string>();
        doc.provenance.input = prov.at("input").get<std::string>();
        doc.provenance.seed = prov.at("seed").get<std::uint64_t>();
        doc.provenance.tolerance = prov.at("tolerance").get<double>();

        const std::string type = j.at("payload_type").get<std::string>();
        const json& p = j.at("payload");
        if (type == "spectrum") {
            SpectrumReport r;
            r.arw_eigenvalues = doubles_of(p.at("arw_eigenvalues"));
            r.arw_singular_values = doubles_of(p.at("arw_singular_values"));
            r.laplacian_eigenvalues = doubles_of(p.at("laplacian_eigenvalues"));
            r.lrw_eigenvalues = doubles_of(p.at("lrw_eigenvalues"));
            const std::string sel = p.at("csv_selection").get<std::string>();
            r.csv_selection = sel == "laplacian" ? SpectrumCsvSelection::Laplacian
                              : sel == "arw"     ? SpectrumCsvSelection::RandomWalkMatrix
                                                 : SpectrumCsvSelection::RandomWalkLaplacian;
            doc.payload = std::move(r);
        } else if (type == "cluster_assignment") {
            ClusterAssignment r;
            r.inertia = p.at("inertia").get<double>();
            r.iterations = p.at("iterations").get<std::size_t>();
            r.k = p.at("k").get<std::size_t>();
            for (const auto& v : p.at("labels")) r.labels.push_back(v.get<std::size_t>());
            r.ncut = p.at("ncut").get<double>();
            r.seed = p.at("seed").get<std::uint64_t>();
            doc.payload = std::move(r);
        } else if (type == "theorem") {
            doc.payload = theorem_of(p);
        } else if (type == "theorem_sweep") {
            TheoremSweep r;
            for (const auto& rep : p.at("reports")) r.reports.push_back(theorem_of(rep));
            doc.payload = std::move(r);
        } else if (type == "spectrum_stats") {
            SpectrumStats r;
            r.n = p.at("n").get<std::size_t>();
            r.num_negative = p.at("num_negative").get<std::size_t>();
            r.num_positive = p.at("num_positive").get<std::size_t>();
            r.num_zero = p.at("num_zero").get<std::size_t>();
            r.positive_fraction = p.at("positive_fraction").get<double>();
            r.zero_tolerance = p.at("zero_tolerance").get<double>();
            doc.payload = std::move(r);
        } else if (type == "smoothness") {
            SmoothnessComparison r;
            r.sc = smoothness_of(p.at("sc_bases"), BasisSource::ScBases);
            r.svd = smoothness_of(p.at("svd_bases"), BasisSource::SvdBases);
            doc.payload = std::move(r);
        } else {
            throw ParseError(1, "unknown payload_type: " + type);
        }
    } catch (const json::exception& e) {
        throw ParseError(1, std::string("malformed report: ") + e.what());
    }
    return doc;
}

} // namespace spectral
