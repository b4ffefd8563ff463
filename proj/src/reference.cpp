#include "qgraph/reference.hpp"

#include <cmath>
#include <numbers>

#include "qgraph/errors.hpp"

namespace qgraph::reference {

namespace {

constexpr Complex kI(0.0, 1.0);

Complex phase(double x) { return std::polar(1.0, x); }

} // namespace

ComplexMatrix kirchhoff_star_smatrix(std::size_t n) {
    const auto k = static_cast<Eigen::Index>(n);
    ComplexMatrix s = ComplexMatrix::Constant(k, k, Complex(2.0 / static_cast<double>(n)));
    s -= ComplexMatrix::Identity(k, k);
    return s;
}

ComplexMatrix ring_smatrix(double energy, double a) {
    const double k = std::sqrt(energy);
    const Complex z = phase(2.0 * k * a);
    const Complex pre = -1.0 / (z - 9.0);
    ComplexMatrix s(2, 2);
    s(0, 0) = s(1, 1) = pre * 3.0 * (z - 1.0);
    s(0, 1) = s(1, 0) = pre * 8.0 * phase(k * a);
    return s;
}

Complex ring_determinant(double energy, double a) {
    const double k = std::sqrt(energy);
    return (10.0 - phase(2.0 * k * a) - 9.0 * phase(-2.0 * k * a)) * energy;
}

ComplexMatrix ring_star_kernel(double energy, double a) {
    const double k = std::sqrt(energy);
    const Complex z = phase(2.0 * k * a);
    const Complex pre = 1.0 / ((1.0 - z / 9.0) * (1.0 - z));
    ComplexMatrix m(2, 2);
    m(0, 0) = m(1, 1) = pre * (1.0 - 5.0 / 9.0 * z);
    m(0, 1) = m(1, 0) = pre * (-4.0 / 9.0 * z);
    return m;
}

Complex tadpole_smatrix(double energy, double a) {
    const double k = std::sqrt(energy);
    return phase(k * a) * (phase(-k * a) - 3.0) / (phase(k * a) - 3.0);
}

ComplexMatrix tadpole_star_kernel(double energy, double a) {
    const double k = std::sqrt(energy);
    const Complex z = phase(k * a);
    const Complex pre = 1.0 / ((1.0 - z / 3.0) * (1.0 - z));
    ComplexMatrix m(2, 2);
    m(0, 0) = m(1, 1) = pre * (1.0 - 2.0 / 3.0 * z);
    m(0, 1) = m(1, 0) = pre * (-z / 3.0);
    return m;
}

namespace {

RobinDelta robin_delta_impl(double phi, double c, double energy, double alpha_sign) {
    const double k = std::sqrt(energy);
    const Complex ik = kI * k;
    const Complex s_robin =
        -(std::sin(phi) - ik * std::cos(phi)) / (std::sin(phi) + ik * std::cos(phi));
    // e^{i(k + 2 delta_R)} = e^{ik} S_R
    const Complex bounce = phase(k) * s_robin;
    RobinDelta r;
    r.S = ((2.0 * ik + c) * bounce + c * phase(-k)) / ((2.0 * ik - c) * phase(-k) - c * bounce) *
          phase(-2.0 * k);
    const Complex den = (2.0 * ik - c) * phase(-k) + alpha_sign * c * bounce;
    r.alpha = 2.0 * ik * phase(-k) * s_robin / den;
    r.beta = 2.0 * ik * phase(-k) / den;
    return r;
}

} // namespace

RobinDelta robin_delta_line(double phi, double c, double energy) {
    return robin_delta_impl(phi, c, energy, -1.0);
}

RobinDelta robin_delta_line_alt_sign(double phi, double c, double energy) {
    return robin_delta_impl(phi, c, energy, +1.0);
}

RobinDelta robin_delta_from_solver(Complex s, Complex alpha, Complex beta, double energy) {
    const double k = std::sqrt(energy);
    return RobinDelta{s * phase(-2.0 * k), alpha * phase(-k), beta * phase(-k)};
}

ComplexMatrix cyclic_smatrix(double c, std::size_t n, double energy) {
    const double k = std::sqrt(energy);
    const double two_pi_n = 2.0 * std::numbers::pi / static_cast<double>(n);
    const auto size = static_cast<Eigen::Index>(n);
    ComplexMatrix s = ComplexMatrix::Zero(size, size);
    for (Eigen::Index j = 0; j < size; ++j) {
        for (Eigen::Index col = 0; col < size; ++col) {
            Complex sum = 0.0;
            for (Eigen::Index l = 0; l < size; ++l) {
                const double h = 2.0 * c * std::cos(two_pi_n * static_cast<double>(l));
                sum += phase(two_pi_n * static_cast<double>((col - j) * l)) * (1.0 - kI * k * h) /
                       (1.0 + kI * k * h);
            }
            s(j, col) = -sum / static_cast<double>(n);
        }
    }
    return s;
}

ComplexMatrix sl2_smatrix(double a, double b, double c, double d, double mu, double energy) {
    const double k = std::sqrt(energy);
    const Complex den = a - kI * k * b + kI * c / k + d;
    ComplexMatrix s(2, 2);
    s(0, 0) = (a - kI * k * b - kI * c / k - d) / den;
    s(0, 1) = 2.0 * phase(mu) / den;
    s(1, 0) = 2.0 * phase(-mu) / den;
    s(1, 1) = (-a - kI * k * b - kI * c / k + d) / den;
    return s;
}

ComplexMatrix line_composition(const ComplexMatrix& s_left, const ComplexMatrix& s_right,
                               double a, double energy) {
    if (s_left.rows() != 2 || s_right.rows() != 2) {
        throw DimensionMismatch("line_composition expects 2x2 matrices");
    }
    const double k = std::sqrt(energy);
    const Complex e1 = phase(k * a);
    const Complex e2 = phase(2.0 * k * a);
    const Complex inv = 1.0 / (1.0 - s_left(1, 1) * s_right(0, 0) * e2);
    ComplexMatrix s(2, 2);
    s(0, 0) = s_left(0, 0) + s_left(0, 1) * s_right(0, 0) * s_left(1, 0) * e2 * inv;
    s(1, 1) = s_right(1, 1) + s_left(1, 1) * s_right(1, 0) * s_right(0, 1) * e2 * inv;
    s(0, 1) = s_left(0, 1) * s_right(0, 1) * e1 * inv;
    s(1, 0) = s_right(1, 0) * s_left(1, 0) * e1 * inv;
    return s;
}

} // namespace qgraph::reference
