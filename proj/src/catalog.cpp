#include "qgraph/catalog.hpp"

#include <algorithm>

namespace qgraph::catalog {

namespace {

using E = EndpointRef;

std::size_t uniform_index(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

} // namespace

MetricGraph single_vertex_graph(const BoundaryCondition& bc) {
    MetricGraph g;
    Vertex v{{}, bc};
    for (std::size_t i = 0; i < bc.dim(); ++i) {
        g.externals.push_back(std::to_string(i + 1));
        v.endpoints.push_back(E::external(g.externals.back()));
    }
    g.vertices.push_back(std::move(v));
    return g;
}

MetricGraph ring_graph(double a) {
    MetricGraph g;
    g.externals = {"1", "2"};
    g.internals = {{"3", a}, {"4", a}};
    g.vertices.push_back(Vertex{{E::external("1"), E::start("3"), E::start("4")},
                                kirchhoff_standard(3)});
    g.vertices.push_back(Vertex{{E::external("2"), E::end("3"), E::end("4")},
                                kirchhoff_standard(3)});
    return g;
}

MetricGraph tadpole_graph(double a) {
    MetricGraph g;
    g.externals = {"1"};
    g.internals = {{"2", a}};
    g.vertices.push_back(Vertex{{E::external("1"), E::start("2"), E::end("2")},
                                kirchhoff_standard(3)});
    return g;
}

MetricGraph robin_delta_graph(double phi, double c) {
    MetricGraph g;
    g.externals = {"out"};
    g.internals = {{"seg", 1.0}};
    g.vertices.push_back(Vertex{{E::start("seg")}, robin(phi)});
    g.vertices.push_back(Vertex{{E::external("out"), E::end("seg")}, delta_coupling(c)});
    return g;
}

MetricGraph chain_graph(const BoundaryCondition& left, const BoundaryCondition& right,
                        double a) {
    MetricGraph g;
    g.externals = {"1", "3"};
    g.internals = {{"2", a}};
    g.vertices.push_back(Vertex{{E::external("1"), E::start("2")}, left});
    g.vertices.push_back(Vertex{{E::external("3"), E::end("2")}, right});
    return g;
}

MetricGraph closed_ring_graph(double a) {
    MetricGraph g;
    g.internals = {{"loop", a}};
    g.vertices.push_back(Vertex{{E::end("loop"), E::start("loop")}, trivial_vertex_bc()});
    return g;
}

RandomGraph random_cuttable_graph(std::mt19937_64& rng, const RandomGraphLimits& limits) {
    const std::size_t n = uniform_index(rng, 1, limits.max_external);
    const std::size_t m = uniform_index(rng, 1, limits.max_internal);
    const std::size_t vc = uniform_index(rng, 2, std::min(limits.max_vertices, m + 1));
    const std::size_t left_count = uniform_index(rng, 1, vc - 1);
    std::uniform_real_distribution<double> length(limits.min_length, limits.max_length);

    // Vertices 0..left_count-1 form the left group, the rest the right group.
    struct Edge {
        std::size_t from;
        std::size_t to;
        bool crossing;
    };
    std::vector<Edge> edges;
    for (std::size_t v = 1; v < vc; ++v) {
        if (v == left_count) {
            continue;
        }
        const std::size_t group_start = v < left_count ? 0 : left_count;
        edges.push_back({uniform_index(rng, group_start, v - 1), v, false});
    }
    edges.push_back({uniform_index(rng, 0, left_count - 1), uniform_index(rng, left_count, vc - 1),
                     true});
    while (edges.size() < m) {
        const std::size_t a = uniform_index(rng, 0, vc - 1);
        const std::size_t b = uniform_index(rng, 0, vc - 1);
        edges.push_back({a, b, (a < left_count) != (b < left_count)});
    }
    std::shuffle(edges.begin(), edges.end(), rng);

    RandomGraph out;
    std::vector<std::vector<EndpointRef>> incident(vc);
    for (std::size_t i = 0; i < n; ++i) {
        out.graph.externals.push_back("e" + std::to_string(i));
        incident[uniform_index(rng, 0, vc - 1)].push_back(E::external(out.graph.externals.back()));
    }
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const std::string id = "l" + std::to_string(i);
        out.graph.internals.push_back({id, length(rng)});
        const bool flip = std::bernoulli_distribution(0.5)(rng);
        const std::size_t s = flip ? edges[i].to : edges[i].from;
        const std::size_t t = flip ? edges[i].from : edges[i].to;
        incident[s].push_back(E::start(id));
        incident[t].push_back(E::end(id));
        if (edges[i].crossing) {
            out.cut_edges.push_back(id);
        }
    }
    for (auto& endpoints : incident) {
        std::shuffle(endpoints.begin(), endpoints.end(), rng);
        const std::uint64_t seed = rng();
        BoundaryCondition bc = random_boundary_condition(endpoints.size(), seed);
        out.graph.vertices.push_back(Vertex{std::move(endpoints), std::move(bc)});
    }
    return out;
}

} // namespace qgraph::catalog
