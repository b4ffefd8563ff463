#include "qgraph/linalg.hpp"

#include <cmath>
#include <string>

#include "qgraph/errors.hpp"

namespace qgraph {

namespace {

Eigen::JacobiSVD<ComplexMatrix> full_svd(const ComplexMatrix& m) {
    return Eigen::JacobiSVD<ComplexMatrix>(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
}

} // namespace

void require_finite(const ComplexMatrix& m, std::string_view what) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            const Complex z = m(i, j);
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                throw NonFiniteInput(std::string(what) + ": non-finite entry at (" +
                                     std::to_string(i) + ", " + std::to_string(j) + ")");
            }
        }
    }
}

RealVector singular_values(const ComplexMatrix& m) {
    if (m.size() == 0) {
        return RealVector();
    }
    return Eigen::JacobiSVD<ComplexMatrix>(m).singularValues();
}

double spectral_norm(const ComplexMatrix& m) {
    if (m.size() == 0) {
        return 0.0;
    }
    return singular_values(m)(0);
}

double inverse_condition(const ComplexMatrix& m) {
    const RealVector s = singular_values(m);
    if (s.size() == 0 || s(0) == 0.0) {
        return 0.0;
    }
    return s(s.size() - 1) / s(0);
}

ComplexMatrix solve_linear(const ComplexMatrix& m, const ComplexMatrix& rhs, double tol) {
    if (m.rows() != m.cols()) {
        throw DimensionMismatch("solve_linear: matrix is not square");
    }
    if (rhs.rows() != m.rows()) {
        throw DimensionMismatch("solve_linear: right-hand side has wrong row count");
    }
    require_finite(m, "solve_linear matrix");
    require_finite(rhs, "solve_linear right-hand side");
    if (m.size() == 0) {
        return ComplexMatrix(0, rhs.cols());
    }
    const RealVector s = singular_values(m);
    if (s(s.size() - 1) < tol * s(0) || s(0) == 0.0) {
        throw SingularMatrix("solve_linear: matrix is singular at tolerance " +
                             std::to_string(tol));
    }
    return m.partialPivLu().solve(rhs);
}

Complex determinant(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) {
        throw DimensionMismatch("determinant: matrix is not square");
    }
    require_finite(m, "determinant");
    if (m.size() == 0) {
        return Complex(1.0, 0.0);
    }
    return m.partialPivLu().determinant();
}

ComplexMatrix pseudoinverse(const ComplexMatrix& m, double tol) {
    require_finite(m, "pseudoinverse");
    ComplexMatrix result = ComplexMatrix::Zero(m.cols(), m.rows());
    if (m.size() == 0) {
        return result;
    }
    const auto svd = full_svd(m);
    const RealVector& s = svd.singularValues();
    if (s(0) == 0.0) {
        return result;
    }
    const double cutoff = tol * s(0);
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (s(i) > cutoff) {
            result += svd.matrixV().col(i) * (1.0 / s(i)) * svd.matrixU().col(i).adjoint();
        }
    }
    return result;
}

double unitarity_defect(const ComplexMatrix& u) {
    if (u.rows() != u.cols()) {
        throw DimensionMismatch("unitarity_defect: matrix is not square");
    }
    const ComplexMatrix d = u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols());
    return spectral_norm(d);
}

double hermiticity_defect(const ComplexMatrix& h) {
    if (h.rows() != h.cols()) {
        throw DimensionMismatch("hermiticity_defect: matrix is not square");
    }
    return spectral_norm(h - h.adjoint());
}

std::size_t numeric_rank(const ComplexMatrix& m, double tol) {
    const RealVector s = singular_values(m);
    if (s.size() == 0 || s(0) == 0.0) {
        return 0;
    }
    std::size_t rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (s(i) > tol * s(0)) {
            ++rank;
        }
    }
    return rank;
}

DefectReport defect_report(const ComplexMatrix& m, double tol) {
    DefectReport report;
    report.tolerance_used = tol;
    report.rank = numeric_rank(m, tol);
    if (m.rows() == m.cols()) {
        report.unitarity_defect = unitarity_defect(m);
        report.hermiticity_defect = hermiticity_defect(m);
    }
    return report;
}

ComplexMatrix random_gaussian(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
        for (Eigen::Index i = 0; i < g.rows(); ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(i, j) = Complex(re, im) / std::sqrt(2.0);
        }
    }
    return g;
}

ComplexMatrix random_unitary(std::size_t n, std::mt19937_64& rng) {
    const ComplexMatrix g = random_gaussian(n, n, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the column phases so the distribution is Haar rather than QR-biased.
    for (Eigen::Index i = 0; i < q.cols(); ++i) {
        const Complex d = r(i, i);
        const double a = std::abs(d);
        if (a > 0.0) {
            q.col(i) *= d / a;
        }
    }
    return q;
}

} // namespace qgraph
