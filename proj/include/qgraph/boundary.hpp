#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qgraph/linalg.hpp"

namespace qgraph {

/// Default tolerance for admissibility checks. The hermiticity defect is
/// measured relative to ||(A,B)||^2 so that rescaling a condition does not
/// change the verdict.
inline constexpr double kValidationTolerance = 1e-10;

/// A pair (A, B) imposing A psi + B psi' = 0 on the endpoint data of N
/// endpoints. Construction checks shape and finiteness only; admissibility as
/// a self-adjoint extension is the job of validate().
class BoundaryCondition {
  public:
    BoundaryCondition(ComplexMatrix a, ComplexMatrix b);

    const ComplexMatrix& A() const noexcept { return a_; }
    const ComplexMatrix& B() const noexcept { return b_; }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(a_.rows()); }

    /// The N x 2N block (A, B).
    ComplexMatrix stacked() const;
    BoundaryCondition conjugate() const;

  private:
    ComplexMatrix a_;
    ComplexMatrix b_;
};

struct ValidationReport {
    bool rank_ok = false;
    bool hermitian_ok = false;
    std::size_t rank_found = 0;
    double hermiticity_defect = 0.0;
    bool is_real_bc = false;

    bool admissible() const noexcept { return rank_ok && hermitian_ok; }
};

/// Partition of endpoint indices into the blocks that the condition couples.
struct VertexPartition {
    std::vector<std::vector<std::size_t>> blocks;
};

ValidationReport validate(const BoundaryCondition& bc, double tol = kValidationTolerance);

/// Throws InvalidBoundaryCondition naming the failed criterion.
void require_admissible(const BoundaryCondition& bc, double tol = kValidationTolerance);

/// Reduced row echelon form of (A, B), pivots chosen left to right over the
/// A columns first and then the B columns. Two conditions describe the same
/// extension iff their canonical forms agree.
BoundaryCondition canonicalize(const BoundaryCondition& bc);

bool equivalent(const BoundaryCondition& lhs, const BoundaryCondition& rhs,
                double tol = kValidationTolerance);

/// (A, B) -> (-B T, A T) with T = diag(I_{n+m}, -I_m).
BoundaryCondition dual(const BoundaryCondition& bc, std::size_t n_external,
                       std::size_t m_internal);

bool is_real(const BoundaryCondition& bc, double tol = kValidationTolerance);

/// True when A B^dagger = 0 and every canonical row involves only values or
/// only derivatives; the single-vertex S-matrix is then energy independent.
bool scale_invariant(const BoundaryCondition& bc, double tol = kValidationTolerance);

BoundaryCondition dirichlet(std::size_t n);
BoundaryCondition neumann(std::size_t n);
/// 1x1 condition sin(phi) psi + cos(phi) psi' = 0.
BoundaryCondition robin(double phi);
/// Continuity of values plus vanishing sum of inward derivatives.
BoundaryCondition kirchhoff_standard(std::size_t n);

/// Two-endpoint condition (psi, psi')(0+) = e^{i mu} M (psi, psi')(0-) with
/// M = [[a, b], [c, d]] in SL(2, R). Endpoint 0 is the x > 0 side, endpoint 1
/// the x < 0 side; both derivatives are inward.
BoundaryCondition sl2_coupling(double a, double b, double c, double d, double mu);
BoundaryCondition delta_coupling(double strength, double mu = 0.0);
BoundaryCondition delta_prime(double strength);

/// psi_j + c (psi'_{j-1} + psi'_{j+1}) = 0 with indices mod n; n odd, n >= 3.
BoundaryCondition cyclic_coupling(double c, std::size_t n);

/// A = -(U - I), B = i (U + I) for a seeded Haar unitary U.
BoundaryCondition random_boundary_condition(std::size_t n, std::uint64_t seed);
BoundaryCondition boundary_from_unitary(const ComplexMatrix& u);

/// W with W^{-1} equal to the single-vertex S-matrix of
/// (A - B/sqrt2, B/sqrt2) at E = 1.
ComplexMatrix von_neumann_parameter(const BoundaryCondition& bc);

VertexPartition localize(const BoundaryCondition& bc);

} // namespace qgraph
