#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

#include <Eigen/Dense>

namespace qgraph {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Relative threshold (times the largest singular value) below which a
/// singular value counts as zero.
inline constexpr double kRankTolerance = 1e-10;

struct DefectReport {
    double unitarity_defect = 0.0;
    double hermiticity_defect = 0.0;
    std::size_t rank = 0;
    double tolerance_used = kRankTolerance;
};

/// Throws NonFiniteInput if any entry is NaN or infinite.
void require_finite(const ComplexMatrix& m, std::string_view what);

/// Solves M X = RHS for square nonsingular M.
/// Throws SingularMatrix when sigma_min < tol * sigma_max.
ComplexMatrix solve_linear(const ComplexMatrix& m, const ComplexMatrix& rhs,
                           double tol = kRankTolerance);

/// Determinant via LU with partial pivoting; 0 for singular input.
Complex determinant(const ComplexMatrix& m);

/// Moore-Penrose pseudoinverse from a truncated SVD. Singular values at or
/// below tol * sigma_max are treated as zero, so the zero matrix maps to zero.
ComplexMatrix pseudoinverse(const ComplexMatrix& m, double tol = kRankTolerance);

/// Singular values in decreasing order.
RealVector singular_values(const ComplexMatrix& m);

double spectral_norm(const ComplexMatrix& m);

/// ||U^dagger U - I||_2
double unitarity_defect(const ComplexMatrix& u);

/// ||H - H^dagger||_2
double hermiticity_defect(const ComplexMatrix& h);

/// Number of singular values above tol * sigma_max (0 for the zero matrix).
std::size_t numeric_rank(const ComplexMatrix& m, double tol = kRankTolerance);

DefectReport defect_report(const ComplexMatrix& m, double tol = kRankTolerance);

/// Smallest singular value divided by the largest; 0 for the zero matrix.
double inverse_condition(const ComplexMatrix& m);

// Seeded generators for property tests and random operands.
ComplexMatrix random_gaussian(std::size_t rows, std::size_t cols, std::mt19937_64& rng);

/// Haar-distributed unitary from the QR factors of a complex Gaussian matrix.
ComplexMatrix random_unitary(std::size_t n, std::mt19937_64& rng);

} // namespace qgraph
