#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qgraph/graph.hpp"

namespace qgraph {

/// Z(E) is treated as singular when sigma_min / sigma_max falls below this.
inline constexpr double kSingularTolerance = 1e-8;
/// Relative residual allowed for the least-squares solve at singular energies.
inline constexpr double kResidualTolerance = 1e-8;
/// Refined sigma_min / sigma_max accepted as an eigenvalue by the spectrum search.
inline constexpr double kSpectrumTolerance = 1e-6;
/// Cap on the coordinate accepted on an external half-line.
inline constexpr double kExternalCoordinateCap = 1e6;

struct XYZ {
    ComplexMatrix X;
    ComplexMatrix Y;
    ComplexMatrix Z;
};

XYZ build_xyz(const GlobalBC& gbc, double energy);

/// Right-hand side of Z x = rhs, i.e. -(A - ikB) restricted to the external columns.
ComplexMatrix scattering_rhs(const GlobalBC& gbc, double energy);

/// -(A + ikB)^{-1} (A - ikB).
ComplexMatrix smatrix_single_vertex(const BoundaryCondition& bc, double energy);

/// -(A^dagger - ikB^dagger)(AA^dagger + E BB^dagger)^{-1}(A - ikB); same matrix,
/// computed through a positive definite solve.
ComplexMatrix smatrix_single_vertex_positive(const BoundaryCondition& bc, double energy);

struct ScatteringResult {
    double energy = 0.0;
    ComplexMatrix S;
    ComplexMatrix alpha; ///< m x n, coefficient of e^{ikx} on each internal line
    ComplexMatrix beta;  ///< m x n, coefficient of e^{-ikx}
    bool at_eigenvalue = false; ///< alpha/beta are then minimum-norm representatives
    double unitarity_defect = 0.0;
    double residual = 0.0;
    double inverse_condition = 0.0;
};

ScatteringResult solve_scattering(const GlobalBC& gbc, double energy,
                                  double singular_tol = kSingularTolerance);

struct SpectrumResult {
    std::vector<double> eigenvalues;
    std::vector<double> residuals; ///< singularity_measure at each eigenvalue
    std::pair<double, double> search_window;
    std::size_t grid_points = 0;
};

/// sigma_min(Z) relative to ||A|| ||X|| + k ||B|| ||Y|| at energy E. Equals
/// sigma_min / sigma_max up to an O(1) factor, but stays meaningful when Z
/// vanishes altogether.
double singularity_measure(const GlobalBC& gbc, double energy);

/// Grid scan in k of sigma_min/sigma_max, golden-section refinement of every
/// local minimum, acceptance below `tol`. grid == 0 picks a density
/// proportional to the longest line.
SpectrumResult spectrum(const GlobalBC& gbc, double e_min, double e_max, std::size_t grid = 0,
                        double tol = kSpectrumTolerance);

struct EigenMode {
    ComplexVector alpha_hat;
    ComplexVector beta_hat;
    double exterior_norm = 0.0; ///< size of the (vanishing) external component
};

/// Orthonormal basis of Ker Z(E). Throws NotAnEigenvalue when Z(E) is regular.
std::vector<EigenMode> eigenfunction(const GlobalBC& gbc, double energy,
                                     double tol = kSingularTolerance);

/// Line index: 0..n-1 are the external lines, n..n+m-1 the internal ones.
Complex evaluate_wavefunction(const GlobalBC& gbc, const ScatteringResult& result,
                              std::size_t channel, std::size_t line, double x);
Complex evaluate_wavefunction_derivative(const GlobalBC& gbc, const ScatteringResult& result,
                                         std::size_t channel, std::size_t line, double x);

/// ||S_{conj(A),conj(B)}^T - S||, and for real conditions also ||S^T - S||.
double check_transpose(const GlobalBC& gbc, double energy);

/// Compares S, alpha, beta at E with the dual problem (lengths E a) at 1/E.
double check_duality(const GlobalBC& gbc, double energy);

/// Compares the problem with (A U^, B U^), U^ = diag(U, I, I), against
/// U^{-1} S U, alpha U, beta U.
double check_covariance(const GlobalBC& gbc, const ComplexMatrix& u, double energy);

enum class GridSpacing { UniformK, UniformE };

std::vector<double> energy_grid(double e_min, double e_max, std::size_t points,
                                GridSpacing spacing = GridSpacing::UniformK);

struct SweepPoint {
    double energy = 0.0;
    std::optional<ScatteringResult> result;
    std::string error; ///< set when the solve failed at this energy
};

/// Solves at each energy with `workers` threads (0 = hardware concurrency).
/// Output order follows the input grid; failures become flagged points.
std::vector<SweepPoint> sweep(const GlobalBC& gbc, const std::vector<double>& energies,
                              std::size_t workers = 1);

} // namespace qgraph
