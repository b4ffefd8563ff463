#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "qgraph/errors.hpp"
#include "qgraph/linalg.hpp"
#include "qgraph/reference.hpp"

using namespace qgraph;
using oracle::max_abs;

TEST(SolveLinear, IdentityReturnsRhs) {
    std::mt19937_64 rng(1);
    const ComplexMatrix r = random_gaussian(3, 2, rng);
    EXPECT_LT(max_abs(solve_linear(ComplexMatrix::Identity(3, 3), r) - r), 1e-15);
}

TEST(SolveLinear, Diagonal) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = 2.0;
    m(1, 1) = 4.0;
    ComplexMatrix rhs(2, 1);
    rhs << 2.0, 4.0;
    ComplexMatrix want(2, 1);
    want << 1.0, 1.0;
    EXPECT_LT(max_abs(solve_linear(m, rhs) - want), 1e-15);
}

TEST(SolveLinear, RoundTrip) {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 20; ++t) {
        const ComplexMatrix m = oracle::random_invertible(8, rng);
        const ComplexMatrix x0 = random_gaussian(8, 3, rng);
        EXPECT_LT(max_abs(solve_linear(m, m * x0) - x0), 1e-11);
    }
}

TEST(SolveLinear, SingularThrows) {
    ComplexMatrix m = ComplexMatrix::Ones(3, 3);
    EXPECT_THROW(solve_linear(m, ComplexMatrix::Ones(3, 1)), SingularMatrix);
}

TEST(SolveLinear, RejectsNonFinite) {
    ComplexMatrix m = ComplexMatrix::Identity(2, 2);
    m(0, 1) = std::nan("");
    EXPECT_THROW(solve_linear(m, ComplexMatrix::Ones(2, 1)), NonFiniteInput);
}

TEST(Determinant, Basics) {
    EXPECT_LT(std::abs(determinant(ComplexMatrix::Identity(4, 4)) - 1.0), 1e-15);
    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 0) = Complex(0, 1);
    d(1, 1) = 2.0;
    EXPECT_LT(std::abs(determinant(d) - Complex(0, 2)), 1e-15);
}

TEST(Determinant, Multiplicative) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t) {
        const ComplexMatrix a = random_gaussian(8, 8, rng);
        const ComplexMatrix b = random_gaussian(8, 8, rng);
        const Complex lhs = determinant(a * b);
        const Complex rhs = determinant(a) * determinant(b);
        EXPECT_LT(std::abs(lhs - rhs) / std::abs(rhs), 1e-10);
    }
}

TEST(Pseudoinverse, Diagonal) {
    ComplexMatrix d = ComplexMatrix::Zero(4, 4);
    d(0, 0) = 2.0;
    d(1, 1) = Complex(0, -4);
    ComplexMatrix want = ComplexMatrix::Zero(4, 4);
    want(0, 0) = 0.5;
    want(1, 1) = Complex(0, 0.25);
    EXPECT_LT(max_abs(pseudoinverse(d) - want), 1e-15);
}

TEST(Pseudoinverse, ZeroIsZero) {
    const ComplexMatrix z = ComplexMatrix::Zero(3, 5);
    const ComplexMatrix p = pseudoinverse(z);
    EXPECT_EQ(p.rows(), 5);
    EXPECT_EQ(p.cols(), 3);
    EXPECT_EQ(max_abs(p), 0.0);
}

TEST(Pseudoinverse, PenroseRankThree) {
    std::mt19937_64 rng(4);
    const ComplexMatrix m = random_gaussian(6, 3, rng) * random_gaussian(3, 4, rng);
    const ComplexMatrix p = pseudoinverse(m);
    EXPECT_LT(spectral_norm(m * p * m - m), 1e-12);
    EXPECT_LT(spectral_norm(p * m * p - p), 1e-12);
    EXPECT_LT(spectral_norm((m * p).adjoint() - m * p), 1e-12);
    EXPECT_LT(spectral_norm((p * m).adjoint() - p * m), 1e-12);
}

TEST(Pseudoinverse, FullRankIsInverse) {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t) {
        const ComplexMatrix m = oracle::random_invertible(6, rng);
        EXPECT_LT(max_abs(pseudoinverse(m) - m.inverse()), 1e-10);
    }
}

TEST(UnitarityDefect, Values) {
    EXPECT_EQ(unitarity_defect(ComplexMatrix::Identity(3, 3)), 0.0);
    EXPECT_NEAR(unitarity_defect(2.0 * ComplexMatrix::Identity(3, 3)), 3.0, 1e-14);
    EXPECT_LT(unitarity_defect(reference::ring_smatrix(1.0, 1.0)), 1e-12);
}

TEST(NumericRank, Values) {
    EXPECT_EQ(numeric_rank(ComplexMatrix::Identity(4, 4)), 4u);
    std::mt19937_64 rng(6);
    ComplexMatrix m = random_gaussian(4, 4, rng);
    m.row(3) = m.row(1);
    EXPECT_EQ(numeric_rank(m), 3u);
    // (A, B) of the standard 3-line vertex
    ComplexMatrix ab(3, 6);
    ab << 1, -1, 0, 0, 0, 0, 0, 1, -1, 0, 0, 0, 0, 0, 0, 1, 1, 1;
    EXPECT_EQ(numeric_rank(ab), 3u);
}

TEST(RandomUnitary, IsUnitaryAndSeeded) {
    std::mt19937_64 a(7), b(7);
    const ComplexMatrix u = random_unitary(6, a);
    EXPECT_LT(unitarity_defect(u), 1e-13);
    EXPECT_EQ(u, random_unitary(6, b));
}

TEST(DefectReport, Fields) {
    const DefectReport r = defect_report(ComplexMatrix::Identity(3, 3));
    EXPECT_EQ(r.rank, 3u);
    EXPECT_EQ(r.unitarity_defect, 0.0);
    EXPECT_EQ(r.hermiticity_defect, 0.0);
}
