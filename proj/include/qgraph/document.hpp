#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qgraph/graph.hpp"

namespace qgraph {

/// Boundary condition given by constructor name, e.g. {"type": "robin", "phi": 0.5}.
struct NamedBc {
    std::string type;
    std::map<std::string, double> params;

    friend bool operator==(const NamedBc&, const NamedBc&) = default;
};

/// Boundary condition given by its matrices; complex entries are [re, im].
struct ExplicitBc {
    ComplexMatrix A;
    ComplexMatrix B;

    friend bool operator==(const ExplicitBc& l, const ExplicitBc& r);
};

using BcSpec = std::variant<NamedBc, ExplicitBc>;

struct VertexSpec {
    std::vector<EndpointRef> endpoints;
    BcSpec bc;

    friend bool operator==(const VertexSpec&, const VertexSpec&) = default;
};

struct GraphDocument {
    std::vector<std::string> externals;
    std::vector<InternalLine> internals;
    std::vector<VertexSpec> vertices;
    nlohmann::json metadata = nlohmann::json::object();

    friend bool operator==(const GraphDocument& l, const GraphDocument& r);
};

/// Throws ParseError on malformed JSON, unknown keys or bad endpoint refs.
GraphDocument parse_document(std::string_view text);
GraphDocument load_document(const std::filesystem::path& path);

std::string to_json(const GraphDocument& doc);

/// Builds the boundary condition a spec names for `dim` endpoints.
/// Throws InvalidParameters for parameters outside a constructor's domain.
BoundaryCondition make_bc(const BcSpec& spec, std::size_t dim);

/// Structural problems raise InvalidGraph, bad constructor parameters
/// InvalidParameters.
MetricGraph to_graph(const GraphDocument& doc);

/// Every vertex condition is written out explicitly.
GraphDocument from_graph(const MetricGraph& g);

} // namespace qgraph
