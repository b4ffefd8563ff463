#include "qgraph/scattering.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "qgraph/errors.hpp"

namespace qgraph {

namespace {

constexpr Complex kI(0.0, 1.0);
constexpr int kGoldenIterations = 40;
constexpr double kMergeTolerance = 1e-6;

void require_positive(double energy) {
    if (!(energy > 0.0) || !std::isfinite(energy)) {
        throw NonpositiveEnergy("energy must be positive and finite, got " +
                                std::to_string(energy));
    }
}

GlobalBC with_bc(const GlobalBC& gbc, BoundaryCondition bc) {
    return GlobalBC{gbc.n, gbc.m, gbc.lengths, std::move(bc)};
}

double relative_defect(const ComplexMatrix& got, const ComplexMatrix& want) {
    if (got.size() == 0) {
        return 0.0;
    }
    return spectral_norm(got - want) / std::max(1.0, spectral_norm(want));
}

// Upper bound for ||Z|| from its factors. Unlike sigma_max(Z) it does not
// collapse when the whole of Z degenerates (closed graphs with a full kernel).
double z_scale(const GlobalBC& gbc, const XYZ& xyz, double energy) {
    return spectral_norm(gbc.bc.A()) * spectral_norm(xyz.X) +
           std::sqrt(energy) * spectral_norm(gbc.bc.B()) * spectral_norm(xyz.Y);
}

} // namespace

XYZ build_xyz(const GlobalBC& gbc, double energy) {
    require_positive(energy);
    const double k = std::sqrt(energy);
    const auto n = static_cast<Eigen::Index>(gbc.n);
    const auto m = static_cast<Eigen::Index>(gbc.m);
    const Eigen::Index size = n + 2 * m;
    if (static_cast<Eigen::Index>(gbc.bc.dim()) != size ||
        static_cast<Eigen::Index>(gbc.lengths.size()) != m) {
        throw DimensionMismatch("global boundary condition does not match n + 2m");
    }

    ComplexMatrix x = ComplexMatrix::Zero(size, size);
    ComplexMatrix y = ComplexMatrix::Zero(size, size);
    x.topLeftCorner(n, n).setIdentity();
    y.topLeftCorner(n, n).setIdentity();
    for (Eigen::Index j = 0; j < m; ++j) {
        const double phase = k * gbc.lengths[static_cast<std::size_t>(j)];
        const Complex ep = std::polar(1.0, phase);
        const Complex em = std::polar(1.0, -phase);
        const Eigen::Index start = n + j;
        const Eigen::Index end = n + m + j;
        const Eigen::Index alpha = n + j;
        const Eigen::Index beta = n + m + j;
        x(start, alpha) = 1.0;
        x(start, beta) = 1.0;
        x(end, alpha) = ep;
        x(end, beta) = em;
        y(start, alpha) = 1.0;
        y(start, beta) = -1.0;
        y(end, alpha) = -ep;
        y(end, beta) = em;
    }
    ComplexMatrix z = gbc.bc.A() * x + (kI * k) * (gbc.bc.B() * y);
    return XYZ{std::move(x), std::move(y), std::move(z)};
}

ComplexMatrix scattering_rhs(const GlobalBC& gbc, double energy) {
    require_positive(energy);
    const double k = std::sqrt(energy);
    const auto n = static_cast<Eigen::Index>(gbc.n);
    return -(gbc.bc.A().leftCols(n) - (kI * k) * gbc.bc.B().leftCols(n));
}

ComplexMatrix smatrix_single_vertex(const BoundaryCondition& bc, double energy) {
    require_positive(energy);
    const double k = std::sqrt(energy);
    return -solve_linear(bc.A() + (kI * k) * bc.B(), bc.A() - (kI * k) * bc.B());
}

ComplexMatrix smatrix_single_vertex_positive(const BoundaryCondition& bc, double energy) {
    require_positive(energy);
    const double k = std::sqrt(energy);
    const ComplexMatrix& a = bc.A();
    const ComplexMatrix& b = bc.B();
    const ComplexMatrix gram = a * a.adjoint() + energy * (b * b.adjoint());
    const ComplexMatrix inner = gram.llt().solve(a - (kI * k) * b);
    return -(a.adjoint() - (kI * k) * b.adjoint()) * inner;
}

ScatteringResult solve_scattering(const GlobalBC& gbc, double energy, double singular_tol) {
    require_positive(energy);
    if (gbc.n == 0) {
        throw NoExternalLines("scattering needs at least one external line");
    }
    const XYZ xyz = build_xyz(gbc, energy);
    const ComplexMatrix rhs = scattering_rhs(gbc, energy);
    const auto n = static_cast<Eigen::Index>(gbc.n);
    const auto m = static_cast<Eigen::Index>(gbc.m);

    ScatteringResult result;
    result.energy = energy;

    Eigen::JacobiSVD<ComplexMatrix> svd(xyz.Z, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const RealVector& s = svd.singularValues();
    result.inverse_condition = s(0) > 0.0 ? s(s.size() - 1) / s(0) : 0.0;

    ComplexMatrix sol;
    if (result.inverse_condition < singular_tol) {
        // Embedded eigenvalue: the system stays consistent and its S block is
        // unique, so the minimum-norm least-squares solution is used.
        result.at_eigenvalue = true;
        ComplexMatrix pinv = ComplexMatrix::Zero(xyz.Z.cols(), xyz.Z.rows());
        for (Eigen::Index i = 0; i < s.size(); ++i) {
            if (s(i) > singular_tol * s(0)) {
                pinv += svd.matrixV().col(i) * (1.0 / s(i)) * svd.matrixU().col(i).adjoint();
            }
        }
        sol = pinv * rhs;
    } else {
        sol = xyz.Z.partialPivLu().solve(rhs);
    }

    const double scale = spectral_norm(xyz.Z) * spectral_norm(sol) + spectral_norm(rhs);
    result.residual = scale > 0.0 ? spectral_norm(xyz.Z * sol - rhs) / scale : 0.0;
    if (result.residual > kResidualTolerance) {
        throw SingularMatrix("scattering system inconsistent at E = " + std::to_string(energy) +
                             " (relative residual " + std::to_string(result.residual) + ")");
    }

    result.S = sol.topRows(n);
    result.alpha = sol.middleRows(n, m);
    result.beta = sol.bottomRows(m);
    result.unitarity_defect = unitarity_defect(result.S);
    return result;
}

double singularity_measure(const GlobalBC& gbc, double energy) {
    const XYZ xyz = build_xyz(gbc, energy);
    const RealVector s = singular_values(xyz.Z);
    const double scale = z_scale(gbc, xyz, energy);
    return s.size() == 0 || scale == 0.0 ? 0.0 : s(s.size() - 1) / scale;
}

SpectrumResult spectrum(const GlobalBC& gbc, double e_min, double e_max, std::size_t grid,
                        double tol) {
    if (!(e_min > 0.0) || !(e_max > e_min) || !std::isfinite(e_max)) {
        throw BadWindow("spectrum window must satisfy 0 < E_min < E_max");
    }
    SpectrumResult result;
    result.search_window = {e_min, e_max};
    if (gbc.m == 0) {
        // Z = A + ikB is invertible for every positive energy.
        return result;
    }

    const double k_lo = std::sqrt(e_min);
    const double k_hi = std::sqrt(e_max);
    if (grid == 0) {
        const double a_max = *std::max_element(gbc.lengths.begin(), gbc.lengths.end());
        grid = static_cast<std::size_t>(std::ceil(2000.0 * a_max * (k_hi - k_lo)));
        grid = std::max<std::size_t>(grid, 200);
    }
    grid = std::max<std::size_t>(grid, 3);
    result.grid_points = grid;

    auto f = [&](double k) { return singularity_measure(gbc, k * k); };
    const double h = (k_hi - k_lo) / static_cast<double>(grid - 1);
    std::vector<double> ks(grid);
    std::vector<double> fs(grid);
    for (std::size_t i = 0; i < grid; ++i) {
        ks[i] = i + 1 == grid ? k_hi : k_lo + h * static_cast<double>(i);
        fs[i] = f(ks[i]);
    }

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    std::vector<std::pair<double, double>> roots;
    for (std::size_t i = 0; i < grid; ++i) {
        const bool left_ok = i == 0 || fs[i] <= fs[i - 1];
        const bool right_ok = i + 1 == grid || fs[i] < fs[i + 1];
        if (!left_ok || !right_ok) {
            continue;
        }
        double a = ks[i == 0 ? 0 : i - 1];
        double b = ks[i + 1 == grid ? i : i + 1];
        double c = b - inv_phi * (b - a);
        double d = a + inv_phi * (b - a);
        double fc = f(c);
        double fd = f(d);
        for (int it = 0; it < kGoldenIterations; ++it) {
            if (fc < fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - inv_phi * (b - a);
                fc = f(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + inv_phi * (b - a);
                fd = f(d);
            }
        }
        double k_best = fc < fd ? c : d;
        double f_best = std::min(fc, fd);
        if (fs[i] < f_best) {
            k_best = ks[i];
            f_best = fs[i];
        }
        if (f_best < tol) {
            roots.emplace_back(k_best * k_best, f_best);
        }
    }

    std::sort(roots.begin(), roots.end());
    for (const auto& [e, r] : roots) {
        if (e < e_min || e > e_max) {
            continue;
        }
        if (!result.eigenvalues.empty() &&
            std::abs(e - result.eigenvalues.back()) <= kMergeTolerance * e) {
            if (r < result.residuals.back()) {
                result.eigenvalues.back() = e;
                result.residuals.back() = r;
            }
            continue;
        }
        result.eigenvalues.push_back(e);
        result.residuals.push_back(r);
    }
    return result;
}

std::vector<EigenMode> eigenfunction(const GlobalBC& gbc, double energy, double tol) {
    const XYZ xyz = build_xyz(gbc, energy);
    Eigen::JacobiSVD<ComplexMatrix> svd(xyz.Z, Eigen::ComputeFullV);
    const RealVector& s = svd.singularValues();
    const auto n = static_cast<Eigen::Index>(gbc.n);
    const auto m = static_cast<Eigen::Index>(gbc.m);
    std::vector<EigenMode> modes;
    if (s.size() == 0) {
        throw NotAnEigenvalue("no internal lines");
    }
    const double scale = z_scale(gbc, xyz, energy);
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (s(i) >= tol * scale) {
            continue;
        }
        const ComplexVector v = svd.matrixV().col(i);
        EigenMode mode;
        mode.exterior_norm = n > 0 ? v.head(n).norm() : 0.0;
        mode.alpha_hat = v.segment(n, m);
        mode.beta_hat = v.segment(n + m, m);
        modes.push_back(std::move(mode));
    }
    if (modes.empty()) {
        throw NotAnEigenvalue("Z(E) is regular at E = " + std::to_string(energy) +
                              " (sigma_min relative to ||Z|| bound = " +
                              std::to_string(s(s.size() - 1) / scale) + ")");
    }
    return modes;
}

namespace {

void check_line(const GlobalBC& gbc, const ScatteringResult& result, std::size_t channel,
                std::size_t line, double x) {
    if (channel >= gbc.n || static_cast<Eigen::Index>(channel) >= result.S.cols()) {
        throw OutOfDomain("channel " + std::to_string(channel) + " out of range");
    }
    if (line >= gbc.n + gbc.m) {
        throw OutOfDomain("line " + std::to_string(line) + " out of range");
    }
    if (!std::isfinite(x) || x < 0.0) {
        throw OutOfDomain("coordinate must be finite and nonnegative");
    }
    if (line < gbc.n && x > kExternalCoordinateCap) {
        throw OutOfDomain("coordinate beyond the external-line cap");
    }
    if (line >= gbc.n && x > gbc.lengths[line - gbc.n]) {
        throw OutOfDomain("coordinate beyond the end of internal line " +
                          std::to_string(line - gbc.n));
    }
}

} // namespace

Complex evaluate_wavefunction(const GlobalBC& gbc, const ScatteringResult& result,
                              std::size_t channel, std::size_t line, double x) {
    check_line(gbc, result, channel, line, x);
    const double k = std::sqrt(result.energy);
    const auto c = static_cast<Eigen::Index>(channel);
    const Complex ep = std::polar(1.0, k * x);
    const Complex em = std::polar(1.0, -k * x);
    if (line < gbc.n) {
        const auto j = static_cast<Eigen::Index>(line);
        return (line == channel ? em : Complex(0.0)) + result.S(j, c) * ep;
    }
    const auto j = static_cast<Eigen::Index>(line - gbc.n);
    return result.alpha(j, c) * ep + result.beta(j, c) * em;
}

Complex evaluate_wavefunction_derivative(const GlobalBC& gbc, const ScatteringResult& result,
                                         std::size_t channel, std::size_t line, double x) {
    check_line(gbc, result, channel, line, x);
    const double k = std::sqrt(result.energy);
    const auto c = static_cast<Eigen::Index>(channel);
    const Complex ep = std::polar(1.0, k * x);
    const Complex em = std::polar(1.0, -k * x);
    const Complex ik = kI * k;
    if (line < gbc.n) {
        const auto j = static_cast<Eigen::Index>(line);
        return ik * ((line == channel ? -em : Complex(0.0)) + result.S(j, c) * ep);
    }
    const auto j = static_cast<Eigen::Index>(line - gbc.n);
    return ik * (result.alpha(j, c) * ep - result.beta(j, c) * em);
}

double check_transpose(const GlobalBC& gbc, double energy) {
    const ScatteringResult direct = solve_scattering(gbc, energy);
    const ScatteringResult conj = solve_scattering(with_bc(gbc, gbc.bc.conjugate()), energy);
    double defect = spectral_norm(conj.S.transpose() - direct.S);
    if (is_real(gbc.bc)) {
        defect = std::max(defect, spectral_norm(direct.S.transpose() - direct.S));
    }
    return defect;
}

double check_duality(const GlobalBC& gbc, double energy) {
    require_positive(energy);
    const ScatteringResult direct = solve_scattering(gbc, energy);
    GlobalBC transformed = with_bc(gbc, dual(gbc.bc, gbc.n, gbc.m));
    for (double& a : transformed.lengths) {
        a *= energy;
    }
    const ScatteringResult other = solve_scattering(transformed, 1.0 / energy);
    double defect = spectral_norm(other.S + direct.S);
    if (!direct.at_eigenvalue && !other.at_eigenvalue) {
        defect = std::max(defect, relative_defect(other.alpha, -direct.alpha));
        defect = std::max(defect, relative_defect(other.beta, direct.beta));
    }
    return defect;
}

double check_covariance(const GlobalBC& gbc, const ComplexMatrix& u, double energy) {
    const auto n = static_cast<Eigen::Index>(gbc.n);
    if (u.rows() != n || u.cols() != n) {
        throw DimensionMismatch("covariance: U must be n x n");
    }
    const auto size = static_cast<Eigen::Index>(gbc.bc.dim());
    ComplexMatrix hat = ComplexMatrix::Identity(size, size);
    hat.topLeftCorner(n, n) = u;
    const GlobalBC rotated = with_bc(gbc, BoundaryCondition(gbc.bc.A() * hat, gbc.bc.B() * hat));

    const ScatteringResult direct = solve_scattering(gbc, energy);
    const ScatteringResult other = solve_scattering(rotated, energy);
    const ComplexMatrix u_inv = u.adjoint();
    double defect = spectral_norm(other.S - u_inv * direct.S * u);
    if (!direct.at_eigenvalue && !other.at_eigenvalue) {
        defect = std::max(defect, relative_defect(other.alpha, direct.alpha * u));
        defect = std::max(defect, relative_defect(other.beta, direct.beta * u));
    }
    return defect;
}

std::vector<double> energy_grid(double e_min, double e_max, std::size_t points,
                                GridSpacing spacing) {
    if (!(e_min > 0.0) || !(e_max >= e_min) || !std::isfinite(e_max)) {
        throw BadWindow("energy grid needs 0 < E_min <= E_max");
    }
    if (points == 0) {
        throw BadWindow("energy grid needs at least one point");
    }
    std::vector<double> grid(points);
    if (points == 1) {
        grid[0] = e_min;
        return grid;
    }
    const double denom = static_cast<double>(points - 1);
    if (spacing == GridSpacing::UniformE) {
        for (std::size_t i = 0; i < points; ++i) {
            grid[i] = e_min + (e_max - e_min) * static_cast<double>(i) / denom;
        }
    } else {
        const double k_lo = std::sqrt(e_min);
        const double k_hi = std::sqrt(e_max);
        for (std::size_t i = 0; i < points; ++i) {
            const double k = k_lo + (k_hi - k_lo) * static_cast<double>(i) / denom;
            grid[i] = k * k;
        }
    }
    grid.front() = e_min;
    grid.back() = e_max;
    return grid;
}

std::vector<SweepPoint> sweep(const GlobalBC& gbc, const std::vector<double>& energies,
                              std::size_t workers) {
    std::vector<SweepPoint> points(energies.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < energies.size(); i = next++) {
            SweepPoint& p = points[i];
            p.energy = energies[i];
            try {
                p.result = solve_scattering(gbc, energies[i]);
            } catch (const Error& e) {
                p.error = e.what();
            }
        }
    };
    if (workers == 0) {
        workers = std::max(1u, std::thread::hardware_concurrency());
    }
    workers = std::min(workers, std::max<std::size_t>(energies.size(), 1));
    if (workers <= 1) {
        work();
        return points;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back(work);
    }
    pool.clear();
    return points;
}

} // namespace qgraph
