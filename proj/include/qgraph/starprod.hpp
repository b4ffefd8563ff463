#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qgraph/graph.hpp"

namespace qgraph {

/// Eigenvalue distance from 1 below which Condition A counts as violated.
inline constexpr double kConditionATolerance = 1e-8;

/// Operands of U' *_V U''. The last p channels of `left` are glued to the
/// first p channels of `right` through the p x p amalgam V.
struct StarOperands {
    ComplexMatrix left;
    ComplexMatrix right;
    ComplexMatrix amalgam;
    std::size_t p = 0;

    /// Amalgam defaults to the identity.
    static StarOperands with_identity(ComplexMatrix left, ComplexMatrix right, std::size_t p);
};

struct ConditionA {
    bool ok = false;
    double margin = 0.0; ///< min |lambda - 1| over the spectrum of V U'22 V^{-1} U''11
};

/// Checks shapes and finiteness; throws InvalidOperands.
void check_operands(const StarOperands& ops);

ConditionA condition_a(const StarOperands& ops, double tol = kConditionATolerance);

struct StarKernels {
    ComplexMatrix K1; ///< (I - V U'22 V^{-1} U''11)^{-1} V
    ComplexMatrix K2; ///< (I - V^{-1} U''11 V U'22)^{-1} V^{-1}
};

StarKernels star_kernels(const StarOperands& ops, double tol = kConditionATolerance);

/// Truncated geometric series for the kernels, for comparison at
/// contracting inputs only.
StarKernels star_kernels_series(const StarOperands& ops, std::size_t terms);

/// U' *_V U''. Throws ConditionAViolated carrying the margin.
ComplexMatrix star(const StarOperands& ops, double tol = kConditionATolerance);

/// Swaps the leading `first` channels with the rest, keeping order inside
/// each block.
ComplexMatrix block_swap(const ComplexMatrix& u, std::size_t first);

/// ||U1 *_V (U2 *_V' U3) - (U1 *_V U2) *_V' U3||; the middle operand carries
/// p leading and p' trailing glued channels, so p + p' <= dim U2.
double associativity_defect(const ComplexMatrix& u1, const ComplexMatrix& u2,
                            const ComplexMatrix& u3, const ComplexMatrix& v,
                            const ComplexMatrix& v_prime);

/// diag(e^{ik a_1}, ..., e^{ik a_p}, I) of size `size`.
ComplexMatrix propagation_phases(const std::vector<double>& lengths, std::size_t size,
                                 double energy);

/// S' *_p (V(a) S'' V(a)). Cut channels must be last in S' and first in S''
/// in the order of the cut map.
ComplexMatrix compose_smatrices(const ComplexMatrix& s_left, const ComplexMatrix& s_right,
                                const CutMap& cut_map, double energy,
                                double tol = kConditionATolerance);

struct Factorization {
    ComplexMatrix composed;
    ComplexMatrix direct;
    double defect = 0.0;
    double margin = 0.0;
};

/// Cuts g along `edge_ids`, solves both parts, composes them and compares
/// with the direct solve of g. Tadpoles are split first; naming a tadpole in
/// `edge_ids` cuts both of its halves.
Factorization factorize_graph(const MetricGraph& g, const std::vector<std::string>& edge_ids,
                              double energy, double tol = kConditionATolerance);

} // namespace qgraph
