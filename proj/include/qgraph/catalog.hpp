#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qgraph/graph.hpp"

// Small graphs with known scattering data, plus a seeded generator of random
// graphs that can be cut into two parts.
namespace qgraph::catalog {

/// One vertex carrying `bc`, with externals "1".."n".
MetricGraph single_vertex_graph(const BoundaryCondition& bc);

/// Two externals, two lines of length a, Kirchhoff at both vertices.
MetricGraph ring_graph(double a);

/// One external and a loop of length a on a Kirchhoff vertex.
MetricGraph tadpole_graph(double a);

/// Robin end, segment of length 1, delta of strength c, external line.
MetricGraph robin_delta_graph(double phi, double c);

/// Two vertices on a line joined by a segment of length a; externals "1"
/// (left) and "3" (right), segment "2".
MetricGraph chain_graph(const BoundaryCondition& left, const BoundaryCondition& right,
                        double a);

/// A loop of length a closed by a trivial vertex, no externals.
MetricGraph closed_ring_graph(double a);

struct RandomGraph {
    MetricGraph graph;
    std::vector<std::string> cut_edges; ///< splits the graph into two parts
};

struct RandomGraphLimits {
    std::size_t max_external = 5;
    std::size_t max_internal = 4;
    std::size_t max_vertices = 4;
    double min_length = 0.2;
    double max_length = 3.0;
};

/// Random graph with 1..max_external externals, 1..max_internal lines and
/// random admissible vertex conditions. Vertices are split in two connected
/// groups; the lines running between them form `cut_edges`.
RandomGraph random_cuttable_graph(std::mt19937_64& rng, const RandomGraphLimits& limits = {});

} // namespace qgraph::catalog
