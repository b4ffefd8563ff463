#pragma once

#include "qgraph/graph.hpp"

// Closed-form scattering data for small graphs with known answers. These are
// written straight from the analytic expressions and share no code with the
// solver, so they serve as independent oracles for the tests and selftest.
namespace qgraph::reference {

/// Standard Kirchhoff vertex with n lines: S = (2/n) J - I for every E.
ComplexMatrix kirchhoff_star_smatrix(std::size_t n);

/// Two externals joined through two Kirchhoff vertices by two lines of
/// length a ("ring").
ComplexMatrix ring_smatrix(double energy, double a);
Complex ring_determinant(double energy, double a);
/// Printed kernel of the ring composed from two Kirchhoff stars.
ComplexMatrix ring_star_kernel(double energy, double a);

/// One external line attached by a Kirchhoff vertex to a loop of length a.
Complex tadpole_smatrix(double energy, double a);
/// Kernel K1 of the free 2-line matrix glued to the loop vertex through
/// half-length phases.
ComplexMatrix tadpole_star_kernel(double energy, double a);

/// Robin end at x = 0, delta of strength c at x = 1, external line beyond.
/// Values in the coordinate where the external line starts at x = 1.
struct RobinDelta {
    Complex S;
    Complex alpha;
    Complex beta;
};
RobinDelta robin_delta_line(double phi, double c, double energy);
/// The alpha/beta expressions with the opposite sign on c e^{i(k+2delta)} in
/// the denominator. They do not satisfy the matching conditions; kept so the
/// tests can show that.
RobinDelta robin_delta_line_alt_sign(double phi, double c, double energy);
/// Converts solver output (external coordinate starting at the vertex) to the
/// coordinate used by robin_delta_line.
RobinDelta robin_delta_from_solver(Complex s, Complex alpha, Complex beta, double energy);

/// psi_j + c (psi'_{j-1} + psi'_{j+1}) = 0: diagonalised by the discrete
/// Fourier transform.
ComplexMatrix cyclic_smatrix(double c, std::size_t n, double energy);

/// 2x2 S for (psi, psi')(0+) = e^{i mu} M (psi, psi')(0-), channel 0 the
/// x > 0 side.
ComplexMatrix sl2_smatrix(double a, double b, double c, double d, double mu, double energy);

/// Two single-vertex S-matrices on a line joined by a segment of length a,
/// summed as a multiple-reflection series in closed form.
ComplexMatrix line_composition(const ComplexMatrix& s_left, const ComplexMatrix& s_right,
                               double a, double energy);

} // namespace qgraph::reference
