#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qgraph/catalog.hpp"
#include "qgraph/errors.hpp"
#include "qgraph/reference.hpp"
#include "qgraph/scattering.hpp"
#include "qgraph/starprod.hpp"

using namespace qgraph;
using oracle::max_abs;

namespace {

constexpr double kPi = std::numbers::pi;

ComplexMatrix swap_unit(Eigen::Index p) {
    ComplexMatrix f = ComplexMatrix::Zero(2 * p, 2 * p);
    f.topRightCorner(p, p).setIdentity();
    f.bottomLeftCorner(p, p).setIdentity();
    return f;
}

ComplexMatrix block_diag(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix m = ComplexMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
    m.topLeftCorner(a.rows(), a.cols()) = a;
    m.bottomRightCorner(b.rows(), b.cols()) = b;
    return m;
}

// Plane-wave multiple-reflection sum for two scatterers on a line, summed
// term by term: an independent check of the glued 2x2 matrix.
ComplexMatrix bounce_series(const ComplexMatrix& l, const ComplexMatrix& r, double a, double k,
                            int terms) {
    const Complex e = std::polar(1.0, k * a);
    Complex geometric = 0.0, x = 1.0;
    for (int i = 0; i < terms; ++i) {
        geometric += x;
        x *= l(1, 1) * r(0, 0) * e * e;
    }
    ComplexMatrix s(2, 2);
    s(0, 0) = l(0, 0) + l(0, 1) * e * r(0, 0) * e * l(1, 0) * geometric;
    s(1, 1) = r(1, 1) + r(1, 0) * e * l(1, 1) * e * r(0, 1) * geometric;
    s(0, 1) = l(0, 1) * e * r(0, 1) * geometric;
    s(1, 0) = r(1, 0) * e * l(1, 0) * geometric;
    return s;
}

} // namespace

TEST(ConditionA, ContractionIsFine) {
    std::mt19937_64 rng(51);
    const ComplexMatrix u1 = random_unitary(5, rng);
    const ComplexMatrix u2 = random_unitary(4, rng);
    const StarOperands ops = StarOperands::with_identity(u1, u2, 2);
    ASSERT_LT(spectral_norm(u1.bottomRightCorner(2, 2)), 1.0);
    EXPECT_TRUE(condition_a(ops).ok);
}

TEST(ConditionA, ScalarOnesViolate) {
    ComplexMatrix one = ComplexMatrix::Ones(1, 1);
    ComplexMatrix u(2, 2);
    u << 0, 1, 1, 0;
    // left: U'22 = [1] needs a 2x2 operand whose last entry is 1
    ComplexMatrix left = ComplexMatrix::Identity(2, 2);
    ComplexMatrix right = ComplexMatrix::Identity(2, 2);
    const ConditionA c = condition_a(StarOperands{left, right, one, 1});
    EXPECT_FALSE(c.ok);
    EXPECT_EQ(c.margin, 0.0);
    EXPECT_THROW(star(StarOperands{left, right, one, 1}), ConditionAViolated);
}

TEST(ConditionA, TadpoleResonance) {
    for (int n = 1; n <= 3; ++n) {
        const double e = (2 * kPi * n) * (2 * kPi * n);
        const ComplexMatrix v = propagation_phases({0.5, 0.5}, 3, e);
        const StarOperands ops = StarOperands::with_identity(
            swap_unit(1), v * reference::kirchhoff_star_smatrix(3) * v, 2);
        EXPECT_FALSE(condition_a(ops).ok);
        try {
            factorize_graph(catalog::tadpole_graph(1.0), {"2"}, e);
            FAIL();
        } catch (const ConditionAViolated& ex) {
            EXPECT_LT(ex.margin(), 1e-6);
        }
    }
}

TEST(Operands, Rejections) {
    const ComplexMatrix u = ComplexMatrix::Identity(3, 3);
    EXPECT_THROW(check_operands(StarOperands::with_identity(u, u, 4)), InvalidOperands);
    EXPECT_THROW(check_operands(StarOperands::with_identity(u, u, 3)), InvalidOperands);
    EXPECT_THROW(check_operands(StarOperands{u, u, ComplexMatrix::Identity(2, 2), 1}), InvalidOperands);
    EXPECT_THROW(check_operands(StarOperands::with_identity(ComplexMatrix::Ones(2, 3), u, 1)), InvalidOperands);
    EXPECT_NO_THROW(check_operands(StarOperands::with_identity(u, u, 2)));
}

TEST(Star, UnitLaws) {
    std::mt19937_64 rng(52);
    for (int t = 0; t < 50; ++t) {
        const Eigen::Index p = 1 + t % 3;
        const std::size_t extra = 1 + t % 4;
        const ComplexMatrix u = random_unitary(static_cast<std::size_t>(p) + extra, rng);
        const ComplexMatrix v = random_unitary(static_cast<std::size_t>(p), rng);
        const ComplexMatrix id = ComplexMatrix::Identity(static_cast<Eigen::Index>(extra), static_cast<Eigen::Index>(extra));
        const auto pp = static_cast<std::size_t>(p);
        EXPECT_LT(max_abs(star(StarOperands{swap_unit(p), u, v, pp}) -
                          block_diag(v.adjoint(), id) * u * block_diag(v, id)),
                  1e-12);
        EXPECT_LT(max_abs(star(StarOperands{u, swap_unit(p), v, pp}) -
                          block_diag(id, v) * u * block_diag(id, v.adjoint())),
                  1e-12);
        // with V = I the free matrices are plain units
        EXPECT_LT(max_abs(star(StarOperands::with_identity(swap_unit(p), u, pp)) - u), 1e-12);
    }
}

TEST(Star, NoSharedChannelsIsBlockDiagonal) {
    std::mt19937_64 rng(53);
    const ComplexMatrix a = random_unitary(3, rng), b = random_unitary(2, rng);
    EXPECT_LT(max_abs(star(StarOperands::with_identity(a, b, 0)) - block_diag(a, b)), 1e-15);
}

TEST(Star, UnitaryOnRandomInput) {
    std::mt19937_64 rng(54);
    for (int t = 0; t < 200; ++t) {
        const ComplexMatrix u = star(StarOperands{random_unitary(4, rng), random_unitary(5, rng),
                                                  random_unitary(2, rng), 2});
        EXPECT_EQ(u.rows(), 5);
        EXPECT_LT(unitarity_defect(u), 1e-11);
    }
}

TEST(Star, TranspositionLaw) {
    std::mt19937_64 rng(55);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n1 = 2 + t % 5, n2 = 1 + t % 4, p = 1 + t % std::min(n1, n2);
        if (2 * p >= n1 + n2) {
            continue;
        }
        const ComplexMatrix u1 = random_unitary(n1, rng), u2 = random_unitary(n2, rng);
        const ComplexMatrix v = random_unitary(p, rng);
        const ComplexMatrix lhs = block_swap(star(StarOperands{u1, u2, v, p}), n1 - p);
        const ComplexMatrix rhs = star(StarOperands{block_swap(u2, p), block_swap(u1, n1 - p), v.adjoint(), p});
        EXPECT_LT(max_abs(lhs - rhs), 1e-11);
    }
}

TEST(Star, KernelsMatchNeumannSeries) {
    std::mt19937_64 rng(56);
    int used = 0;
    for (int t = 0; t < 200 && used < 50; ++t) {
        const ComplexMatrix u1 = random_unitary(6, rng), u2 = random_unitary(5, rng);
        const ComplexMatrix v = random_unitary(2, rng);
        if (spectral_norm(u1.bottomRightCorner(2, 2)) >= 0.9) {
            continue;
        }
        const StarOperands ops{u1, u2, v, 2};
        const StarKernels exact = star_kernels(ops);
        const StarKernels series = star_kernels_series(ops, 1000);
        EXPECT_LT(max_abs(exact.K1 - series.K1), 1e-12);
        EXPECT_LT(max_abs(exact.K2 - series.K2), 1e-12);
        ++used;
    }
    EXPECT_GT(used, 10);
}

TEST(Associativity, UnitsAndRandom) {
    const ComplexMatrix id1 = ComplexMatrix::Identity(1, 1);
    EXPECT_LT(associativity_defect(swap_unit(1), swap_unit(1), swap_unit(1), id1, id1), 1e-15);
    std::mt19937_64 rng(57);
    int done = 0;
    for (int t = 0; t < 500 && done < 50; ++t) {
        const std::size_t n2 = 2 + t % 5;
        const std::size_t p = 1 + t % (n2 - 1);
        const std::size_t pp = 1 + (t / 3) % (n2 - p);
        const std::size_t n1 = p + t % 3, n3 = pp + (t / 2) % 3;
        const bool inner_ok = 2 * p < n1 + n2 && 2 * pp < n2 + n3;
        const bool outer_ok = 2 * p < n1 + n2 + n3 - 2 * pp && 2 * pp < n1 + n2 - 2 * p + n3;
        if (!inner_ok || !outer_ok) {
            continue;
        }
        EXPECT_LT(associativity_defect(random_unitary(n1, rng), random_unitary(n2, rng),
                                       random_unitary(n3, rng), random_unitary(p, rng),
                                       random_unitary(pp, rng)),
                  1e-10);
        ++done;
    }
    EXPECT_EQ(done, 50);
    EXPECT_THROW(associativity_defect(random_unitary(3, rng), random_unitary(2, rng),
                                      random_unitary(3, rng), random_unitary(2, rng),
                                      random_unitary(1, rng)),
                 InvalidOperands);
}

TEST(Compose, ChainMatchesBounceSeries) {
    const BoundaryCondition l = delta_coupling(1.5), r = delta_coupling(-0.7);
    const MetricGraph g = catalog::chain_graph(l, r, 1.3);
    for (double e : {0.5, 2.0, 5.0}) {
        const ComplexMatrix sl = smatrix_single_vertex(l, e), sr = smatrix_single_vertex(r, e);
        const ComplexMatrix series = bounce_series(sl, sr, 1.3, std::sqrt(e), 4000);
        CutMap map{{CutPair{"2/L", "2/R", 1.3}}};
        EXPECT_LT(max_abs(compose_smatrices(sl, sr, map, e) - series), 1e-10);
        EXPECT_LT(max_abs(reference::line_composition(sl, sr, 1.3, e) - series), 1e-10);
        const Factorization f = factorize_graph(g, {"2"}, e);
        EXPECT_LT(max_abs(f.composed - series), 1e-10);
        EXPECT_LT(f.defect, 1e-10);
    }
}

TEST(Compose, ThreeVerticesOnALine) {
    const BoundaryCondition b1 = delta_coupling(0.8), b2 = delta_prime(-0.4), b3 = delta_coupling(2.1);
    MetricGraph g;
    g.externals = {"L", "R"};
    g.internals = {{"s1", 0.9}, {"s2", 1.7}};
    using E = EndpointRef;
    // the derivative jump of delta' is orientation sensitive: x > 0 side first
    g.vertices.push_back({{E::external("L"), E::start("s1")}, b1});
    g.vertices.push_back({{E::start("s2"), E::end("s1")}, b2});
    g.vertices.push_back({{E::external("R"), E::end("s2")}, b3});
    const GlobalBC gbc = assemble(g);
    for (double e : {0.4, 1.1, 6.0}) {
        const ComplexMatrix s1 = smatrix_single_vertex(b1, e);
        ComplexMatrix s2 = smatrix_single_vertex(b2, e);
        // vertex 2 lists the far side first; compose wants [s1 side, s2 side]
        ComplexMatrix s2_ordered(2, 2);
        s2_ordered << s2(1, 1), s2(1, 0), s2(0, 1), s2(0, 0);
        const ComplexMatrix s3 = smatrix_single_vertex(b3, e);
        ComplexMatrix s3_ordered(2, 2);
        s3_ordered << s3(1, 1), s3(1, 0), s3(0, 1), s3(0, 0);
        const ComplexMatrix right = compose_smatrices(s2_ordered, s3_ordered, CutMap{{CutPair{"a", "b", 1.7}}}, e);
        const ComplexMatrix all = compose_smatrices(s1, right, CutMap{{CutPair{"c", "d", 0.9}}}, e);
        EXPECT_LT(max_abs(all - solve_scattering(gbc, e).S), 1e-10);
    }
}

TEST(Compose, RingFromTwoStars) {
    const ComplexMatrix star3 = reference::kirchhoff_star_smatrix(3);
    for (double e : {0.6, 2.0, 7.5}) {
        const ComplexMatrix v = propagation_phases({1.0, 1.0}, 3, e);
        const StarOperands ops = StarOperands::with_identity(star3, v * star3 * v, 2);
        const StarKernels k = star_kernels(ops);
        EXPECT_LT(max_abs(k.K1 - k.K2), 1e-12);
        EXPECT_LT(max_abs(k.K1 - reference::ring_star_kernel(e, 1.0)), 1e-12);
        const CutMap map{{CutPair{"3/L", "3/R", 1.0}, CutPair{"4/L", "4/R", 1.0}}};
        EXPECT_LT(max_abs(compose_smatrices(star3, star3, map, e) - reference::ring_smatrix(e, 1.0)), 1e-12);
    }
}

TEST(Compose, TadpoleFromFreeLine) {
    ComplexMatrix free2(2, 2);
    free2 << 0, 1, 1, 0;
    for (double e : {0.3, 2.0, 11.0}) {
        const ComplexMatrix v = propagation_phases({0.5, 0.5}, 3, e);
        const StarOperands ops = StarOperands::with_identity(free2, v * reference::kirchhoff_star_smatrix(3) * v, 2);
        const ComplexMatrix s = star(ops);
        ASSERT_EQ(s.rows(), 1);
        EXPECT_LT(std::abs(s(0, 0) - reference::tadpole_smatrix(e, 1.0)), 1e-12);
        EXPECT_LT(max_abs(star_kernels(ops).K1 - reference::tadpole_star_kernel(e, 1.0)), 1e-12);
    }
}

TEST(Factorize, RingAwayFromEigenvalues) {
    const MetricGraph ring = catalog::ring_graph(1.0);
    for (double e : {0.5, 1.0, 4.0, 20.0, 50.0}) {
        EXPECT_LT(factorize_graph(ring, {"3", "4"}, e).defect, 1e-10);
    }
}

TEST(Factorize, RandomSmallGraphs) {
    std::mt19937_64 rng(58);
    std::uniform_real_distribution<double> kd(0.3, 4.0);
    catalog::RandomGraphLimits lim;
    lim.max_vertices = 3;
    lim.max_internal = 2;
    int skipped = 0;
    for (int t = 0; t < 50; ++t) {
        const catalog::RandomGraph rg = catalog::random_cuttable_graph(rng, lim);
        for (int i = 0; i < 5; ++i) {
            const double k = kd(rng);
            try {
                EXPECT_LT(factorize_graph(rg.graph, rg.cut_edges, k * k).defect, 1e-9);
            } catch (const ConditionAViolated&) {
                ++skipped;
            }
        }
    }
    EXPECT_LT(skipped, 5);
}

TEST(Factorize, RejectsNonCuts) {
    EXPECT_THROW(factorize_graph(catalog::ring_graph(1.0), {"3"}, 1.0), NotACut);
}
