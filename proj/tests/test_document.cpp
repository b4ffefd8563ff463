#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "oracles.hpp"
#include "qgraph/catalog.hpp"
#include "qgraph/document.hpp"
#include "qgraph/errors.hpp"
#include "qgraph/scattering.hpp"

using namespace qgraph;
using oracle::max_abs;

namespace {

const std::filesystem::path kFixtures = QGRAPH_FIXTURE_DIR;

std::string with_vertices(const std::string& vertices, const std::string& extra = "") {
    return R"({"externals": ["1", "2"], "internals": [], "vertices": [)" + vertices + "]" + extra + "}";
}

} // namespace

TEST(Document, FixturesRoundTrip) {
    int count = 0;
    for (const auto& entry : std::filesystem::directory_iterator(kFixtures)) {
        const GraphDocument doc = load_document(entry.path());
        EXPECT_EQ(parse_document(to_json(doc)), doc) << entry.path();
        ++count;
    }
    EXPECT_GE(count, 8);
}

TEST(Document, ExplicitRoundTripFromGraphs) {
    std::mt19937_64 rng(61);
    for (int t = 0; t < 30; ++t) {
        const MetricGraph g = catalog::random_cuttable_graph(rng).graph;
        const GraphDocument doc = from_graph(g);
        const GraphDocument again = parse_document(to_json(doc));
        EXPECT_EQ(again, doc);
        const MetricGraph h = to_graph(again);
        EXPECT_LT(max_abs(solve_scattering(assemble(g), 1.7).S - solve_scattering(assemble(h), 1.7).S), 1e-14);
    }
}

TEST(Document, NamedConditions) {
    const GraphDocument doc = parse_document(with_vertices(
        R"({"endpoints": ["ext:1", "ext:2"], "bc": {"type": "delta", "strength": 2.5}})"));
    const MetricGraph g = to_graph(doc);
    EXPECT_TRUE(equivalent(g.vertices[0].bc, delta_coupling(2.5)));
    const auto& named = std::get<NamedBc>(doc.vertices[0].bc);
    EXPECT_EQ(named.type, "delta");
    EXPECT_EQ(named.params.at("strength"), 2.5);
}

TEST(Document, MetadataIsFreeForm) {
    const GraphDocument doc = parse_document(with_vertices(
        R"({"endpoints": ["ext:1", "ext:2"], "bc": {"type": "neumann"}})",
        R"(, "metadata": {"anything": [1, {"goes": true}]})"));
    EXPECT_EQ(doc.metadata["anything"][1]["goes"], true);
}

TEST(Document, Rejections) {
    const std::string ok_vertex = R"({"endpoints": ["ext:1", "ext:2"], "bc": {"type": "kirchhoff"}})";
    EXPECT_NO_THROW(parse_document(with_vertices(ok_vertex)));
    EXPECT_THROW(parse_document("{"), ParseError);
    EXPECT_THROW(parse_document("[]"), ParseError);
    EXPECT_THROW(parse_document(with_vertices(ok_vertex, R"(, "extra": 1)")), ParseError);
    EXPECT_THROW(parse_document(with_vertices(
                     R"({"endpoints": ["ext:1", "ext:2"], "bc": {"type": "kirchhoff"}, "x": 0})")),
                 ParseError);
    EXPECT_THROW(parse_document(with_vertices(
                     R"({"endpoints": ["ext:1", "int:2:b"], "bc": {"type": "kirchhoff"}})")),
                 ParseError);
    EXPECT_THROW(parse_document(with_vertices(
                     R"({"endpoints": ["ext:1", "ext:2"], "bc": {"type": "warp"}})")),
                 ParseError);
    EXPECT_THROW(parse_document(with_vertices(
                     R"({"endpoints": ["ext:1", "ext:2"], "bc": {"type": "delta"}})")),
                 ParseError);
    EXPECT_THROW(parse_document(with_vertices(
                     R"({"endpoints": ["ext:1", "ext:2"], "bc": {"type": "delta", "strength": 1, "phi": 2}})")),
                 ParseError);
    EXPECT_THROW(parse_document(with_vertices(
                     R"({"endpoints": ["ext:1", "ext:2"], "bc": {"A": [[[1, 0], [0]], [[0, 0], [1, 0]]], "B": [[[0, 0], [0, 0]], [[0, 0], [0, 0]]]}})")),
                 ParseError);
    EXPECT_THROW(load_document(kFixtures / "does_not_exist.json"), ParseError);
}

TEST(Document, StructuralAndParameterErrors) {
    EXPECT_THROW(to_graph(parse_document(with_vertices(
                     R"({"endpoints": ["ext:1"], "bc": {"type": "kirchhoff"}})"))),
                 InvalidGraph);
    EXPECT_THROW(to_graph(parse_document(with_vertices(
                     R"({"endpoints": ["ext:1", "ext:2"], "bc": {"A": [[[1, 0]]], "B": [[[0, 0]]]}})"))),
                 InvalidGraph);
    EXPECT_THROW(to_graph(parse_document(with_vertices(
                     R"({"endpoints": ["ext:1", "ext:2"], "bc": {"type": "sl2", "a": 1, "b": 1, "c": 1, "d": 1}})"))),
                 InvalidParameters);
    EXPECT_THROW(to_graph(parse_document(with_vertices(
                     R"({"endpoints": ["ext:1", "ext:2"], "bc": {"type": "robin", "phi": 1}})"))),
                 InvalidParameters);
}

TEST(Document, BundledExamplesLoad) {
    EXPECT_THROW(load_document(std::filesystem::path(QGRAPH_FIXTURE_DIR) / ".." / "tests" / "data" / "bad_endpoint.json"),
                 ParseError);
    const MetricGraph mismatch = to_graph(load_document(kFixtures / "invalid_cyclic_mismatch.json"));
    EXPECT_THROW(assemble(mismatch), InvalidBoundaryCondition);
    EXPECT_NO_THROW(assemble(to_graph(load_document(kFixtures / "ring.json"))));
}
