#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "qgraph/boundary.hpp"

namespace qgraph {

enum class EndpointKind { External, InternalStart, InternalEnd };

/// Reference to one endpoint: "ext:<id>", "int:<id>:0" or "int:<id>:a".
struct EndpointRef {
    EndpointKind kind = EndpointKind::External;
    std::string id;

    static EndpointRef external(std::string id);
    static EndpointRef start(std::string id);
    static EndpointRef end(std::string id);

    /// Throws ParseError on malformed text.
    static EndpointRef parse(std::string_view text);
    std::string to_string() const;

    friend bool operator==(const EndpointRef&, const EndpointRef&) = default;
};

struct InternalLine {
    std::string id;
    double length = 1.0;

    friend bool operator==(const InternalLine&, const InternalLine&) = default;
};

struct Vertex {
    std::vector<EndpointRef> endpoints;
    BoundaryCondition bc;
};

struct MetricGraph {
    std::vector<std::string> externals;
    std::vector<InternalLine> internals;
    std::vector<Vertex> vertices;

    std::size_t n() const noexcept { return externals.size(); }
    std::size_t m() const noexcept { return internals.size(); }
};

/// Boundary data of the whole graph in the global endpoint order: externals,
/// then the 0-ends of the internal lines, then their far ends.
struct GlobalBC {
    std::size_t n = 0;
    std::size_t m = 0;
    std::vector<double> lengths;
    BoundaryCondition bc;
};

struct CutPair {
    std::string left_id;
    std::string right_id;
    double length = 0.0;
};

struct CutMap {
    std::vector<CutPair> pairs;
};

struct CutResult {
    MetricGraph left;
    MetricGraph right;
    CutMap map;
};

/// Checks that ids are unique, lengths positive and finite, every endpoint
/// is owned by exactly one vertex and each vertex bc has matching size.
/// Throws InvalidGraph.
void check_structure(const MetricGraph& g);

/// Global column index of an endpoint. Throws InvalidGraph for unknown refs.
std::size_t endpoint_index(const MetricGraph& g, const EndpointRef& ref);

GlobalBC assemble(const MetricGraph& g);

/// Continuity of value and inward-derivative balance between two endpoints.
BoundaryCondition trivial_vertex_bc();

/// Splits an internal line at fraction `position` of its length. The first
/// piece keeps the id; the second gets a fresh id derived from it.
MetricGraph insert_trivial_vertex(const MetricGraph& g, const std::string& internal_id,
                                  double position = 0.5);

/// Ids of internal lines whose two ends sit at the same vertex.
std::vector<std::string> tadpoles(const MetricGraph& g);

/// Inserts a trivial vertex at the midpoint of every tadpole. The returned
/// list maps each original tadpole id to its two halves.
struct TadpoleSplit {
    std::string original;
    std::string first;
    std::string second;
};
MetricGraph normalize_tadpoles(const MetricGraph& g, std::vector<TadpoleSplit>* splits = nullptr);

/// Removes the given internal lines. The remainder must fall into exactly two
/// connected parts and every removed line must join them. Each removed line
/// becomes an external "<id>/L" on the left part and "<id>/R" on the right;
/// cut channels come last on the left and first on the right, in the order
/// of `edge_ids`. The left part is the one holding the 0-end of the first
/// removed line.
CutResult cut(const MetricGraph& g, const std::vector<std::string>& edge_ids);

/// Global endpoint indices grouped by vertex.
VertexPartition vertex_partition(const MetricGraph& g);

} // namespace qgraph
