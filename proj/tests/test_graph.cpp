#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qgraph/catalog.hpp"
#include "qgraph/errors.hpp"
#include "qgraph/graph.hpp"
#include "qgraph/scattering.hpp"

using namespace qgraph;
using oracle::max_abs;
using E = EndpointRef;

namespace {

std::vector<std::string> internal_ids(const MetricGraph& g) {
    std::vector<std::string> ids;
    for (const auto& l : g.internals) {
        ids.push_back(l.id);
    }
    return ids;
}

double length_of(const MetricGraph& g, const std::string& id) {
    for (const auto& l : g.internals) {
        if (l.id == id) {
            return l.length;
        }
    }
    return -1.0;
}

} // namespace

TEST(EndpointRef, ParseAndPrint) {
    EXPECT_EQ(E::parse("ext:1"), E::external("1"));
    EXPECT_EQ(E::parse("int:seg:0"), E::start("seg"));
    EXPECT_EQ(E::parse("int:seg:a"), E::end("seg"));
    EXPECT_EQ(E::parse("int:a:b:a"), E::end("a:b"));
    for (const auto& r : {E::external("x"), E::start("y"), E::end("z")}) {
        EXPECT_EQ(E::parse(r.to_string()), r);
    }
    for (const char* bad : {"", "ext:", "int:seg", "int:seg:b", "int::0", "edge:1", "EXT:1"}) {
        EXPECT_THROW(E::parse(bad), ParseError) << bad;
    }
}

TEST(Structure, Rejections) {
    MetricGraph g = catalog::ring_graph(1.0);
    EXPECT_NO_THROW(check_structure(g));

    MetricGraph dup = g;
    dup.externals.push_back("1");
    EXPECT_THROW(check_structure(dup), InvalidGraph);

    MetricGraph zero = g;
    zero.internals[0].length = 0.0;
    EXPECT_THROW(check_structure(zero), InvalidGraph);

    MetricGraph dangling = g;
    dangling.externals.push_back("5");
    EXPECT_THROW(check_structure(dangling), InvalidGraph);

    MetricGraph twice = g;
    twice.vertices[1].endpoints[0] = E::external("1");
    EXPECT_THROW(check_structure(twice), InvalidGraph);

    MetricGraph unknown = g;
    unknown.vertices[0].endpoints[1] = E::start("9");
    EXPECT_THROW(check_structure(unknown), InvalidGraph);
}

TEST(Assemble, SingleVertexIsLocal) {
    const BoundaryCondition bc = random_boundary_condition(4, 5);
    const GlobalBC gbc = assemble(catalog::single_vertex_graph(bc));
    EXPECT_EQ(gbc.n, 4u);
    EXPECT_EQ(gbc.m, 0u);
    EXPECT_EQ(gbc.bc.A(), bc.A());
    EXPECT_EQ(gbc.bc.B(), bc.B());
}

TEST(Assemble, RingConditions) {
    // order: ext 1, ext 2, 3(0), 4(0), 3(a), 4(a); derivatives inward
    ComplexMatrix a = ComplexMatrix::Zero(6, 6), b = ComplexMatrix::Zero(6, 6);
    a(0, 0) = 1; a(0, 2) = -1;
    a(1, 0) = 1; a(1, 3) = -1;
    b(2, 0) = 1; b(2, 2) = 1; b(2, 3) = 1;
    a(3, 1) = 1; a(3, 4) = -1;
    a(4, 1) = 1; a(4, 5) = -1;
    b(5, 1) = 1; b(5, 4) = 1; b(5, 5) = 1;
    const GlobalBC gbc = assemble(catalog::ring_graph(1.0));
    EXPECT_EQ(gbc.n, 2u);
    EXPECT_EQ(gbc.m, 2u);
    EXPECT_TRUE(equivalent(gbc.bc, BoundaryCondition(a, b)));
}

TEST(Assemble, RobinDeltaConditions) {
    const double phi = 0.7, c = 1.9;
    // order: ext out, seg(0), seg(a)
    ComplexMatrix a = ComplexMatrix::Zero(3, 3), b = ComplexMatrix::Zero(3, 3);
    a(0, 1) = std::sin(phi);
    b(0, 1) = std::cos(phi);
    a(1, 0) = 1; a(1, 2) = -1;
    a(2, 0) = -c; b(2, 0) = 1; b(2, 2) = 1;
    const GlobalBC gbc = assemble(catalog::robin_delta_graph(phi, c));
    EXPECT_TRUE(equivalent(gbc.bc, BoundaryCondition(a, b)));
}

TEST(Assemble, InvalidVertexNamed) {
    MetricGraph g = catalog::ring_graph(1.0);
    g.vertices[1].bc = BoundaryCondition(ComplexMatrix::Identity(3, 3), ComplexMatrix::Identity(3, 3) * Complex(0, 1));
    try {
        assemble(g);
        FAIL();
    } catch (const InvalidBoundaryCondition& e) {
        EXPECT_NE(std::string(e.what()).find("vertex 1"), std::string::npos) << e.what();
    }
}

TEST(Assemble, RandomGraphsStayAdmissibleAndLocal) {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 100; ++t) {
        const MetricGraph g = catalog::random_cuttable_graph(rng).graph;
        const GlobalBC gbc = assemble(g);
        ASSERT_TRUE(validate(gbc.bc).admissible());
        EXPECT_EQ(localize(gbc.bc).blocks, vertex_partition(g).blocks);
    }
}

TEST(Assemble, ClosedGraphAllowed) {
    const GlobalBC gbc = assemble(catalog::closed_ring_graph(1.0));
    EXPECT_EQ(gbc.n, 0u);
    EXPECT_THROW(solve_scattering(gbc, 1.0), NoExternalLines);
}

TEST(TrivialVertex, PreservesScattering) {
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> kd(0.3, 5.0), pos(0.1, 0.9);
    for (int t = 0; t < 10; ++t) {
        const MetricGraph g = catalog::random_cuttable_graph(rng).graph;
        const std::string id = g.internals[std::uniform_int_distribution<std::size_t>(0, g.m() - 1)(rng)].id;
        const MetricGraph h = insert_trivial_vertex(g, id, pos(rng));
        EXPECT_EQ(h.m(), g.m() + 1);
        EXPECT_EQ(h.vertices.size(), g.vertices.size() + 1);
        const GlobalBC ga = assemble(g), gb = assemble(h);
        for (int e = 0; e < 20; ++e) {
            const double k = kd(rng);
            EXPECT_LT(max_abs(solve_scattering(ga, k * k).S - solve_scattering(gb, k * k).S), 1e-9);
        }
    }
}

TEST(TrivialVertex, Lengths) {
    const MetricGraph g = catalog::chain_graph(delta_coupling(1.0), delta_coupling(2.0), 2.0);
    const MetricGraph h = insert_trivial_vertex(g, "2", 0.5);
    ASSERT_EQ(h.m(), 2u);
    const std::string second = h.internals[1].id;
    EXPECT_NE(second, "2");
    const MetricGraph h2 = insert_trivial_vertex(h, second, 0.5);
    std::vector<double> lengths;
    for (const auto& l : h2.internals) {
        lengths.push_back(l.length);
    }
    std::sort(lengths.begin(), lengths.end());
    ASSERT_EQ(lengths.size(), 3u);
    EXPECT_DOUBLE_EQ(lengths[0], 0.5);
    EXPECT_DOUBLE_EQ(lengths[1], 0.5);
    EXPECT_DOUBLE_EQ(lengths[2], 1.0);
    EXPECT_DOUBLE_EQ(length_of(h2, "2"), 1.0);
    EXPECT_THROW(insert_trivial_vertex(g, "7"), UnknownEdge);
    EXPECT_THROW(insert_trivial_vertex(g, "2", 1.0), InvalidParameters);
}

TEST(Tadpoles, NormalizationRemovesThem) {
    const MetricGraph g = catalog::tadpole_graph(1.0);
    EXPECT_EQ(tadpoles(g), std::vector<std::string>{"2"});
    std::vector<TadpoleSplit> splits;
    const MetricGraph h = normalize_tadpoles(g, &splits);
    EXPECT_TRUE(tadpoles(h).empty());
    EXPECT_EQ(h.m(), 2u);
    EXPECT_EQ(h.vertices.size(), 2u);
    ASSERT_EQ(splits.size(), 1u);
    EXPECT_EQ(splits[0].original, "2");
    EXPECT_EQ(internal_ids(h), (std::vector<std::string>{splits[0].first, splits[0].second}));
    EXPECT_DOUBLE_EQ(length_of(h, splits[0].first) + length_of(h, splits[0].second), 1.0);
}

TEST(Cut, RingGivesTwoStars) {
    const CutResult c = cut(catalog::ring_graph(1.0), {"3", "4"});
    for (const MetricGraph* part : {&c.left, &c.right}) {
        EXPECT_EQ(part->n(), 3u);
        EXPECT_EQ(part->m(), 0u);
        ASSERT_EQ(part->vertices.size(), 1u);
        const GlobalBC gbc = assemble(*part);
        EXPECT_LT(max_abs(solve_scattering(gbc, 1.3).S - smatrix_single_vertex(kirchhoff_standard(3), 1.3)), 1e-13);
    }
    ASSERT_EQ(c.map.pairs.size(), 2u);
    EXPECT_DOUBLE_EQ(c.map.pairs[0].length, 1.0);
    // cut channels trail on the left and lead on the right
    EXPECT_EQ(c.left.externals.front(), "1");
    EXPECT_EQ(c.right.externals.back(), "2");
}

TEST(Cut, ChainGivesTwoPieces) {
    const CutResult c = cut(catalog::chain_graph(delta_coupling(1.0), delta_coupling(-1.0), 1.0), {"2"});
    EXPECT_EQ(c.left.externals, (std::vector<std::string>{"1", c.map.pairs[0].left_id}));
    EXPECT_EQ(c.right.externals, (std::vector<std::string>{c.map.pairs[0].right_id, "3"}));
}

TEST(Cut, Rejections) {
    const MetricGraph ring = catalog::ring_graph(1.0);
    EXPECT_THROW(cut(ring, {"3"}), NotACut);
    EXPECT_THROW(cut(ring, {}), NotACut);
    EXPECT_THROW(cut(ring, {"3", "3"}), NotACut);
    EXPECT_THROW(cut(ring, {"9"}), UnknownEdge);
}

TEST(Cut, RandomGraphsSplitInTwo) {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 50; ++t) {
        const catalog::RandomGraph rg = catalog::random_cuttable_graph(rng);
        const MetricGraph g = normalize_tadpoles(rg.graph);
        const CutResult c = cut(g, rg.cut_edges);
        EXPECT_EQ(c.left.n() + c.right.n(), g.n() + 2 * rg.cut_edges.size());
        EXPECT_EQ(c.left.m() + c.right.m() + rg.cut_edges.size(), g.m());
        EXPECT_NO_THROW(assemble(c.left));
        EXPECT_NO_THROW(assemble(c.right));
    }
}
