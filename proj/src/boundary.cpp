#include "qgraph/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qgraph/errors.hpp"

namespace qgraph {

namespace {

constexpr double kEchelonPivotTolerance = 1e-10;
constexpr double kEchelonZeroTolerance = 1e-12;

double block_norm(const BoundaryCondition& bc) { return spectral_norm(bc.stacked()); }

// Row-reduces M in place and returns the pivot columns.
std::vector<Eigen::Index> reduce_rows(ComplexMatrix& m) {
    const double scale = m.cwiseAbs().maxCoeff();
    std::vector<Eigen::Index> pivots;
    if (scale == 0.0) {
        return pivots;
    }
    Eigen::Index row = 0;
    for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
        Eigen::Index best = row;
        double best_abs = 0.0;
        for (Eigen::Index r = row; r < m.rows(); ++r) {
            const double v = std::abs(m(r, col));
            if (v > best_abs) {
                best_abs = v;
                best = r;
            }
        }
        if (best_abs <= kEchelonPivotTolerance * scale) {
            continue;
        }
        m.row(row).swap(m.row(best));
        m.row(row) /= m(row, col);
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            if (r != row && m(r, col) != Complex(0.0)) {
                m.row(r) -= m(r, col) * m.row(row);
            }
        }
        pivots.push_back(col);
        ++row;
    }
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            Complex& z = m(i, j);
            const double re = std::abs(z.real()) < kEchelonZeroTolerance ? 0.0 : z.real();
            const double im = std::abs(z.imag()) < kEchelonZeroTolerance ? 0.0 : z.imag();
            z = Complex(re, im);
        }
    }
    return pivots;
}

ComplexMatrix echelon(const BoundaryCondition& bc) {
    ComplexMatrix m = bc.stacked();
    const double scale = m.cwiseAbs().maxCoeff();
    if (scale > 0.0) {
        m /= scale;
    }
    reduce_rows(m);
    return m;
}

// Minimal union-find over endpoint indices.
class DisjointSets {
  public:
    explicit DisjointSets(std::size_t n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) {
            parent_[std::max(a, b)] = std::min(a, b);
        }
    }

  private:
    std::vector<std::size_t> parent_;
};

} // namespace

BoundaryCondition::BoundaryCondition(ComplexMatrix a, ComplexMatrix b)
    : a_(std::move(a)), b_(std::move(b)) {
    if (a_.rows() != a_.cols() || b_.rows() != b_.cols()) {
        throw DimensionMismatch("boundary condition matrices must be square");
    }
    if (a_.rows() != b_.rows()) {
        throw DimensionMismatch("boundary condition matrices A and B differ in size (" +
                                std::to_string(a_.rows()) + " vs " +
                                std::to_string(b_.rows()) + ")");
    }
    require_finite(a_, "boundary condition A");
    require_finite(b_, "boundary condition B");
}

ComplexMatrix BoundaryCondition::stacked() const {
    ComplexMatrix ab(a_.rows(), 2 * a_.cols());
    ab << a_, b_;
    return ab;
}

BoundaryCondition BoundaryCondition::conjugate() const {
    return BoundaryCondition(a_.conjugate(), b_.conjugate());
}

ValidationReport validate(const BoundaryCondition& bc, double tol) {
    ValidationReport report;
    const std::size_t n = bc.dim();
    if (n == 0) {
        report.rank_ok = true;
        report.hermitian_ok = true;
        report.is_real_bc = true;
        return report;
    }
    report.rank_found = numeric_rank(bc.stacked(), tol);
    report.rank_ok = report.rank_found == n;

    const double scale = block_norm(bc);
    const ComplexMatrix abh = bc.A() * bc.B().adjoint();
    report.hermiticity_defect = scale > 0.0 ? hermiticity_defect(abh) / (scale * scale) : 0.0;
    report.hermitian_ok = report.hermiticity_defect < tol;
    report.is_real_bc = report.admissible() && is_real(bc, tol);
    return report;
}

void require_admissible(const BoundaryCondition& bc, double tol) {
    const ValidationReport r = validate(bc, tol);
    if (!r.rank_ok) {
        throw InvalidBoundaryCondition("(A,B) is rank deficient: rank " +
                                       std::to_string(r.rank_found) + " < " +
                                       std::to_string(bc.dim()));
    }
    if (!r.hermitian_ok) {
        throw InvalidBoundaryCondition("A B^dagger is not Hermitian (hermiticity defect " +
                                       std::to_string(r.hermiticity_defect) + ")");
    }
}

BoundaryCondition canonicalize(const BoundaryCondition& bc) {
    require_admissible(bc);
    const ComplexMatrix m = echelon(bc);
    const Eigen::Index n = static_cast<Eigen::Index>(bc.dim());
    return BoundaryCondition(m.leftCols(n), m.rightCols(n));
}

bool equivalent(const BoundaryCondition& lhs, const BoundaryCondition& rhs, double tol) {
    if (lhs.dim() != rhs.dim()) {
        throw DimensionMismatch("equivalent: boundary conditions of different size");
    }
    if (lhs.dim() == 0) {
        return true;
    }
    const double scale = block_norm(lhs) * block_norm(rhs);
    if (scale == 0.0) {
        return false;
    }
    const ComplexMatrix cross = lhs.A() * rhs.B().adjoint() - lhs.B() * rhs.A().adjoint();
    return spectral_norm(cross) / scale < tol;
}

BoundaryCondition dual(const BoundaryCondition& bc, std::size_t n_external,
                       std::size_t m_internal) {
    if (bc.dim() != n_external + 2 * m_internal) {
        throw DimensionMismatch("dual: dimension " + std::to_string(bc.dim()) +
                                " does not equal n + 2m = " +
                                std::to_string(n_external + 2 * m_internal));
    }
    require_admissible(bc);
    const Eigen::Index n = static_cast<Eigen::Index>(bc.dim());
    RealVector t = RealVector::Ones(n);
    t.tail(static_cast<Eigen::Index>(m_internal)).setConstant(-1.0);
    const auto T = t.cast<Complex>().asDiagonal();
    return BoundaryCondition(-(bc.B() * T), bc.A() * T);
}

bool is_real(const BoundaryCondition& bc, double tol) {
    return equivalent(bc, bc.conjugate(), tol);
}

bool scale_invariant(const BoundaryCondition& bc, double tol) {
    require_admissible(bc, tol);
    const double scale = block_norm(bc);
    if (spectral_norm(bc.A() * bc.B().adjoint()) > tol * scale * scale) {
        return false;
    }
    const ComplexMatrix m = echelon(bc);
    const Eigen::Index n = static_cast<Eigen::Index>(bc.dim());
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        const bool has_a = m.row(i).head(n).cwiseAbs().maxCoeff() > tol;
        const bool has_b = m.row(i).tail(n).cwiseAbs().maxCoeff() > tol;
        if (has_a && has_b) {
            return false;
        }
    }
    return true;
}

BoundaryCondition dirichlet(std::size_t n) {
    const auto k = static_cast<Eigen::Index>(n);
    return BoundaryCondition(ComplexMatrix::Identity(k, k), ComplexMatrix::Zero(k, k));
}

BoundaryCondition neumann(std::size_t n) {
    const auto k = static_cast<Eigen::Index>(n);
    return BoundaryCondition(ComplexMatrix::Zero(k, k), ComplexMatrix::Identity(k, k));
}

BoundaryCondition robin(double phi) {
    ComplexMatrix a(1, 1);
    ComplexMatrix b(1, 1);
    a(0, 0) = std::sin(phi);
    b(0, 0) = std::cos(phi);
    return BoundaryCondition(a, b);
}

BoundaryCondition kirchhoff_standard(std::size_t n) {
    if (n == 0) {
        throw InvalidParameters("kirchhoff_standard: need at least one endpoint");
    }
    const auto k = static_cast<Eigen::Index>(n);
    ComplexMatrix a = ComplexMatrix::Zero(k, k);
    ComplexMatrix b = ComplexMatrix::Zero(k, k);
    for (Eigen::Index j = 0; j + 1 < k; ++j) {
        a(j, j) = 1.0;
        a(j, j + 1) = -1.0;
    }
    b.row(k - 1).setOnes();
    return BoundaryCondition(a, b);
}

BoundaryCondition sl2_coupling(double a, double b, double c, double d, double mu) {
    const double det = a * d - b * c;
    if (!std::isfinite(det) || std::abs(det - 1.0) > 1e-12 * std::max(1.0, std::abs(a * d))) {
        throw InvalidParameters("sl2_coupling: ad - bc must equal 1, got " + std::to_string(det));
    }
    if (!std::isfinite(mu)) {
        throw InvalidParameters("sl2_coupling: mu must be finite");
    }
    // Rows: psi_+ - e M00 psi_- - e M01 psi'(0-) = 0 and the derivative analogue;
    // psi'(0-) is minus the inward derivative on the x < 0 side.
    const Complex e = std::polar(1.0, mu);
    ComplexMatrix am(2, 2);
    ComplexMatrix bm(2, 2);
    am << Complex(1.0), -e * a, Complex(0.0), -e * c;
    bm << Complex(0.0), e * b, Complex(1.0), e * d;
    return BoundaryCondition(am, bm);
}

BoundaryCondition delta_coupling(double strength, double mu) {
    return sl2_coupling(1.0, 0.0, strength, 1.0, mu);
}

BoundaryCondition delta_prime(double strength) {
    return sl2_coupling(1.0, strength, 0.0, 1.0, 0.0);
}

BoundaryCondition cyclic_coupling(double c, std::size_t n) {
    if (n < 3 || n % 2 == 0) {
        throw InvalidParameters("cyclic_coupling: n must be odd and at least 3, got " +
                                std::to_string(n));
    }
    if (!std::isfinite(c)) {
        throw InvalidParameters("cyclic_coupling: coupling must be finite");
    }
    const auto k = static_cast<Eigen::Index>(n);
    ComplexMatrix b = ComplexMatrix::Zero(k, k);
    for (Eigen::Index j = 0; j < k; ++j) {
        b(j, (j + 1) % k) = c;
        b(j, (j + k - 1) % k) = c;
    }
    return BoundaryCondition(ComplexMatrix::Identity(k, k), b);
}

BoundaryCondition boundary_from_unitary(const ComplexMatrix& u) {
    const ComplexMatrix id = ComplexMatrix::Identity(u.rows(), u.cols());
    return BoundaryCondition(-(u - id), Complex(0.0, 1.0) * (u + id));
}

BoundaryCondition random_boundary_condition(std::size_t n, std::uint64_t seed) {
    if (n == 0) {
        throw InvalidParameters("random_boundary_condition: n must be positive");
    }
    std::mt19937_64 rng(seed);
    BoundaryCondition bc = boundary_from_unitary(random_unitary(n, rng));
    require_admissible(bc);
    return bc;
}

ComplexMatrix von_neumann_parameter(const BoundaryCondition& bc) {
    require_admissible(bc);
    // (sqrt2 A - B, B) spans the same subspace as (A - B/sqrt2, B/sqrt2) and
    // keeps the Dirichlet and Neumann cases free of rounding.
    const ComplexMatrix a_hat = std::sqrt(2.0) * bc.A() - bc.B();
    const ComplexMatrix& b_hat = bc.B();
    const Complex i(0.0, 1.0);
    return -solve_linear(a_hat - i * b_hat, a_hat + i * b_hat);
}

VertexPartition localize(const BoundaryCondition& bc) {
    require_admissible(bc);
    const std::size_t n = bc.dim();
    const ComplexMatrix m = echelon(bc);
    DisjointSets sets(n);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        std::size_t first = n;
        for (std::size_t j = 0; j < n; ++j) {
            const auto col = static_cast<Eigen::Index>(j);
            const bool touches = m(i, col) != Complex(0.0) ||
                                 m(i, col + static_cast<Eigen::Index>(n)) != Complex(0.0);
            if (!touches) {
                continue;
            }
            if (first == n) {
                first = j;
            } else {
                sets.unite(first, j);
            }
        }
    }
    std::vector<std::vector<std::size_t>> by_root(n);
    for (std::size_t j = 0; j < n; ++j) {
        by_root[sets.find(j)].push_back(j);
    }
    VertexPartition partition;
    for (auto& block : by_root) {
        if (!block.empty()) {
            partition.blocks.push_back(std::move(block));
        }
    }
    return partition;
}

} // namespace qgraph
