#include "spectral/graph.hpp"

#include <cmath>
#include <numeric>
#include <queue>
#include <sstream>

#include "spectral/errors.hpp"
#include "spectral/rng.hpp"

namespace spectral {

namespace {

std::vector<int> component_labels(const DenseMatrix& a) {
    const std::size_t n = a.rows();
    std::vector<int> comp(n, -1);
    int next = 0;
    for (std::size_t s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        comp[s] = next;
        std::queue<std::size_t> q;
        q.push(s);
        while (!q.empty()) {
            std::size_t u = q.front();
            q.pop();
            for (std::size_t v = 0; v < n; ++v) {
                if (a(u, v) != 0.0 && comp[v] < 0) {
                    comp[v] = next;
                    q.push(v);
                }
            }
        }
        ++next;
    }
    return comp;
}

} // namespace

double ValidatedGraph::total_degree() const {
    return std::accumulate(degrees_.begin(), degrees_.end(), 0.0);
}

ValidatedGraph validate(const DenseMatrix& adjacency,
                        std::vector<std::int64_t> node_labels) {
    const std::size_t n = adjacency.rows();
    if (n == 0 || adjacency.cols() != n)
        throw InvalidParamsError("adjacency must be square and non-empty");
    if (!adjacency.all_finite())
        throw InvalidParamsError("adjacency contains non-finite entries");
    for (std::size_t i = 0; i < n; ++i) {
        if (adjacency(i, i) != 0.0)
            throw SelfLoopError("nonzero diagonal at node " + std::to_string(i));
        for (std::size_t j = 0; j < n; ++j) {
            if (adjacency(i, j) < 0.0)
                throw InvalidParamsError("negative weight at (" + std::to_string(i) +
                                         "," + std::to_string(j) + ")");
            if (adjacency(i, j) != adjacency(j, i))
                throw AsymmetricError("entry mismatch at (" + std::to_string(i) + "," +
                                      std::to_string(j) + ")");
        }
    }

    std::vector<double> degrees(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double d = 0.0;
        for (std::size_t j = 0; j < n; ++j) d += adjacency(i, j);
        if (d <= 0.0)
            throw IsolatedNodeError("node " + std::to_string(i) + " has zero degree");
        degrees[i] = d;
    }

    std::vector<int> comp = component_labels(adjacency);
    for (std::size_t i = 0; i < n; ++i) {
        if (comp[i] != 0) {
            throw DisconnectedError("graph is disconnected: node 0 and node " +
                                    std::to_string(i) + " are in different components");
        }
    }

    if (node_labels.empty()) {
        node_labels.resize(n);
        std::iota(node_labels.begin(), node_labels.end(), std::int64_t{0});
    } else if (node_labels.size() != n) {
        throw InvalidParamsError("node_labels length must equal node count");
    }

    return ValidatedGraph(adjacency, std::move(degrees), std::move(node_labels));
}

DenseMatrix laplacian(const ValidatedGraph& g) {
    const std::size_t n = g.num_nodes();
    DenseMatrix l(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            l(i, j) = -g.adjacency()(i, j);
        l(i, i) = g.degrees()[i];
    }
    return l;
}

DenseMatrix random_walk_laplacian(const ValidatedGraph& g) {
    const std::size_t n = g.num_nodes();
    DenseMatrix l(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const double inv_d = 1.0 / g.degrees()[i];
        for (std::size_t j = 0; j < n; ++j)
            l(i, j) = -g.adjacency()(i, j) * inv_d;
        l(i, i) += 1.0;
    }
    return l;
}

DenseMatrix random_walk_matrix(const ValidatedGraph& g) {
    const std::size_t n = g.num_nodes();
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const double inv_d = 1.0 / g.degrees()[i];
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = g.adjacency()(i, j) * inv_d;
    }
    return m;
}

DenseMatrix symmetric_normalized_adjacency(const ValidatedGraph& g) {
    const std::size_t n = g.num_nodes();
    DenseMatrix m(n, n);
    // a / sqrt(di*dj) rather than a / (sqrt(di)*sqrt(dj)): bit-identical to
    // A_rw for regular graphs (sqrt of a perfect square is exact), and
    // symmetric by construction since di*dj == dj*di
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = g.adjacency()(i, j) / std::sqrt(g.degrees()[i] * g.degrees()[j]);
    return m;
}

namespace {

void add_edge(DenseMatrix& a, std::size_t u, std::size_t v, double w = 1.0) {
    a(u, v) += w;
    a(v, u) = a(u, v);
}

std::size_t require_count(const GeneratorSpec& spec, std::size_t idx,
                          std::size_t minimum, const char* what) {
    if (idx >= spec.params.size())
        throw InvalidParamsError(std::string("missing parameter: ") + what);
    const double p = spec.params[idx];
    if (p < static_cast<double>(minimum) || p != std::floor(p))
        throw InvalidParamsError(std::string("invalid parameter ") + what + ": must be an integer >= " +
                                 std::to_string(minimum));
    return static_cast<std::size_t>(p);
}

double require_prob(const GeneratorSpec& spec, std::size_t idx, const char* what) {
    if (idx >= spec.params.size())
        throw InvalidParamsError(std::string("missing parameter: ") + what);
    const double p = spec.params[idx];
    if (!(p > 0.0) || p > 1.0)
        throw InvalidParamsError(std::string("invalid parameter ") + what + ": must be in (0,1]");
    return p;
}

bool is_connected(const DenseMatrix& a) {
    std::vector<int> comp = component_labels(a);
    for (int c : comp)
        if (c != 0) return false;
    return true;
}

DenseMatrix sample_erdos_renyi(std::size_t n, double p, std::mt19937_64& rng) {
    DenseMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (next_unit(rng) < p) add_edge(a, i, j);
    return a;
}

DenseMatrix sample_planted_partition(std::size_t n, std::size_t k_blocks,
                                     double p_in, double p_out,
                                     std::mt19937_64& rng) {
    DenseMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double p = planted_block_of(i, n, k_blocks) ==
                                     planted_block_of(j, n, k_blocks)
                                 ? p_in
                                 : p_out;
            if (next_unit(rng) < p) add_edge(a, i, j);
        }
    }
    return a;
}

constexpr int kConnectivityRetries = 200;

} // namespace

std::size_t planted_block_of(std::size_t i, std::size_t n, std::size_t k_blocks) {
    // blocks are contiguous; the first n % k_blocks blocks get one extra node
    const std::size_t base = n / k_blocks;
    const std::size_t extra = n % k_blocks;
    const std::size_t pivot = extra * (base + 1);
    if (i < pivot) return i / (base + 1);
    return extra + (i - pivot) / base;
}

ValidatedGraph generate(const GeneratorSpec& spec, std::uint64_t seed) {
    switch (spec.family) {
    case GraphFamily::Path:
        return make_path(require_count(spec, 0, 2, "n"));
    case GraphFamily::Cycle:
        return make_cycle(require_count(spec, 0, 3, "n"));
    case GraphFamily::Complete:
        return make_complete(require_count(spec, 0, 2, "n"));
    case GraphFamily::Star:
        return make_star(require_count(spec, 0, 2, "n"));
    case GraphFamily::Barbell:
        return make_barbell(require_count(spec, 0, 2, "m1"),
                            require_count(spec, 1, 2, "m2"));
    case GraphFamily::ErdosRenyi:
        return make_erdos_renyi(require_count(spec, 0, 2, "n"),
                                require_prob(spec, 1, "p"), seed);
    case GraphFamily::PlantedPartition: {
        const std::size_t n = require_count(spec, 0, 2, "n");
        const std::size_t k = require_count(spec, 1, 1, "k_blocks");
        return make_planted_partition(n, k, require_prob(spec, 2, "p_in"),
                                      require_prob(spec, 3, "p_out"), seed);
    }
    }
    throw InvalidParamsError("unknown graph family");
}

ValidatedGraph make_path(std::size_t n) {
    if (n < 2) throw InvalidParamsError("path requires n >= 2");
    DenseMatrix a(n, n);
    for (std::size_t i = 0; i + 1 < n; ++i) add_edge(a, i, i + 1);
    return validate(a);
}

ValidatedGraph make_cycle(std::size_t n) {
    if (n < 3) throw InvalidParamsError("cycle requires n >= 3");
    DenseMatrix a(n, n);
    for (std::size_t i = 0; i + 1 < n; ++i) add_edge(a, i, i + 1);
    add_edge(a, n - 1, 0);
    return validate(a);
}

ValidatedGraph make_complete(std::size_t n) {
    if (n < 2) throw InvalidParamsError("complete graph requires n >= 2");
    DenseMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) add_edge(a, i, j);
    return validate(a);
}

ValidatedGraph make_star(std::size_t n) {
    if (n < 2) throw InvalidParamsError("star requires n >= 2");
    DenseMatrix a(n, n);
    for (std::size_t i = 1; i < n; ++i) add_edge(a, 0, i);
    return validate(a);
}

ValidatedGraph make_barbell(std::size_t m1, std::size_t m2) {
    if (m1 < 2 || m2 < 2) throw InvalidParamsError("barbell requires clique sizes >= 2");
    const std::size_t n = m1 + m2;
    DenseMatrix a(n, n);
    for (std::size_t i = 0; i < m1; ++i)
        for (std::size_t j = i + 1; j < m1; ++j) add_edge(a, i, j);
    for (std::size_t i = m1; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) add_edge(a, i, j);
    add_edge(a, m1 - 1, m1); // bridge
    return validate(a);
}

ValidatedGraph make_erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
    if (n < 2) throw InvalidParamsError("erdos_renyi requires n >= 2");
    if (!(p > 0.0) || p > 1.0) throw InvalidParamsError("p must be in (0,1]");
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < kConnectivityRetries; ++attempt) {
        DenseMatrix a = sample_erdos_renyi(n, p, rng);
        if (is_connected(a)) return validate(a);
    }
    throw ConnectivityFailureError("erdos_renyi: no connected sample within retry budget");
}

ValidatedGraph make_planted_partition(std::size_t n, std::size_t k_blocks,
                                      double p_in, double p_out,
                                      std::uint64_t seed) {
    if (n < 2 || k_blocks < 1 || k_blocks > n)
        throw InvalidParamsError("planted_partition requires n >= 2 and 1 <= k_blocks <= n");
    if (!(p_in > 0.0) || p_in > 1.0 || !(p_out > 0.0) || p_out > 1.0)
        throw InvalidParamsError("probabilities must be in (0,1]");
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < kConnectivityRetries; ++attempt) {
        DenseMatrix a = sample_planted_partition(n, k_blocks, p_in, p_out, rng);
        if (is_connected(a)) return validate(a);
    }
    throw ConnectivityFailureError("planted_partition: no connected sample within retry budget");
}

GeneratorSpec parse_generator_spec(const std::string& text) {
    // gen:<family>:<p1>,<p2>,...
    std::string body = text;
    if (body.rfind("gen:", 0) == 0) body = body.substr(4);
    const std::size_t colon = body.find(':');
    if (colon == std::string::npos)
        throw InvalidParamsError("generator spec must look like gen:family:params");
    const std::string family = body.substr(0, colon);
    const std::string args = body.substr(colon + 1);

    GeneratorSpec spec;
    if (family == "path") spec.family = GraphFamily::Path;
    else if (family == "cycle") spec.family = GraphFamily::Cycle;
    else if (family == "complete") spec.family = GraphFamily::Complete;
    else if (family == "star") spec.family = GraphFamily::Star;
    else if (family == "barbell") spec.family = GraphFamily::Barbell;
    else if (family == "er" || family == "erdos_renyi") spec.family = GraphFamily::ErdosRenyi;
    else if (family == "pp" || family == "planted_partition") spec.family = GraphFamily::PlantedPartition;
    else throw InvalidParamsError("unknown graph family: " + family);

    std::stringstream ss(args);
    std::string token;
    while (std::getline(ss, token, ',')) {
        try {
            std::size_t pos = 0;
            const double v = std::stod(token, &pos);
            if (pos != token.size()) throw std::invalid_argument(token);
            spec.params.push_back(v);
        } catch (const std::exception&) {
            throw InvalidParamsError("bad generator parameter: " + token);
        }
    }
    if (spec.params.empty())
        throw InvalidParamsError("generator spec needs at least one parameter");
    return spec;
}

} // namespace spectral
