#include "qgraph/starprod.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "qgraph/errors.hpp"
#include "qgraph/scattering.hpp"

namespace qgraph {

namespace {

struct Blocks {
    ComplexMatrix b11, b12, b21, b22;
};

// Splits u after its first `first` channels.
Blocks split(const ComplexMatrix& u, Eigen::Index first) {
    const Eigen::Index rest = u.rows() - first;
    return Blocks{u.topLeftCorner(first, first), u.topRightCorner(first, rest),
                  u.bottomLeftCorner(rest, first), u.bottomRightCorner(rest, rest)};
}

ComplexMatrix unitary_inverse(const ComplexMatrix& v) { return v.adjoint(); }

} // namespace

StarOperands StarOperands::with_identity(ComplexMatrix left, ComplexMatrix right, std::size_t p) {
    const auto k = static_cast<Eigen::Index>(p);
    return StarOperands{std::move(left), std::move(right), ComplexMatrix::Identity(k, k), p};
}

void check_operands(const StarOperands& ops) {
    const auto p = static_cast<Eigen::Index>(ops.p);
    if (ops.left.rows() != ops.left.cols() || ops.right.rows() != ops.right.cols()) {
        throw InvalidOperands("star operands must be square");
    }
    if (ops.amalgam.rows() != p || ops.amalgam.cols() != p) {
        throw InvalidOperands("amalgam must be p x p");
    }
    if (p > ops.left.rows() || p > ops.right.rows()) {
        throw InvalidOperands("p exceeds an operand size");
    }
    if (2 * p >= ops.left.rows() + ops.right.rows()) {
        throw InvalidOperands("2p must be smaller than n' + n''");
    }
    require_finite(ops.left, "left star operand");
    require_finite(ops.right, "right star operand");
    require_finite(ops.amalgam, "amalgam");
}

ConditionA condition_a(const StarOperands& ops, double tol) {
    check_operands(ops);
    const auto p = static_cast<Eigen::Index>(ops.p);
    if (p == 0) {
        return ConditionA{true, std::numeric_limits<double>::infinity()};
    }
    const ComplexMatrix& v = ops.amalgam;
    const ComplexMatrix u22 = ops.left.bottomRightCorner(p, p);
    const ComplexMatrix u11 = ops.right.topLeftCorner(p, p);
    const ComplexMatrix loop = v * u22 * unitary_inverse(v) * u11;
    const Eigen::ComplexEigenSolver<ComplexMatrix> eig(loop, false);
    double margin = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < p; ++i) {
        margin = std::min(margin, std::abs(eig.eigenvalues()(i) - Complex(1.0)));
    }
    return ConditionA{margin > tol, margin};
}

StarKernels star_kernels(const StarOperands& ops, double tol) {
    const ConditionA cond = condition_a(ops, tol);
    if (!cond.ok) {
        throw ConditionAViolated("condition A violated (eigenvalue margin " +
                                     std::to_string(cond.margin) + ")",
                                 cond.margin);
    }
    const auto p = static_cast<Eigen::Index>(ops.p);
    const ComplexMatrix& v = ops.amalgam;
    const ComplexMatrix v_inv = unitary_inverse(v);
    const ComplexMatrix u22 = ops.left.bottomRightCorner(p, p);
    const ComplexMatrix u11 = ops.right.topLeftCorner(p, p);
    const ComplexMatrix id = ComplexMatrix::Identity(p, p);
    StarKernels k;
    k.K1 = (id - v * u22 * v_inv * u11).partialPivLu().solve(v);
    k.K2 = (id - v_inv * u11 * v * u22).partialPivLu().solve(v_inv);
    return k;
}

StarKernels star_kernels_series(const StarOperands& ops, std::size_t terms) {
    check_operands(ops);
    const auto p = static_cast<Eigen::Index>(ops.p);
    const ComplexMatrix& v = ops.amalgam;
    const ComplexMatrix v_inv = unitary_inverse(v);
    const ComplexMatrix u22 = ops.left.bottomRightCorner(p, p);
    const ComplexMatrix u11 = ops.right.topLeftCorner(p, p);
    const ComplexMatrix step1 = v * u22 * v_inv * u11;
    const ComplexMatrix step2 = v_inv * u11 * v * u22;
    ComplexMatrix sum1 = ComplexMatrix::Zero(p, p);
    ComplexMatrix sum2 = ComplexMatrix::Zero(p, p);
    ComplexMatrix pow1 = ComplexMatrix::Identity(p, p);
    ComplexMatrix pow2 = ComplexMatrix::Identity(p, p);
    for (std::size_t t = 0; t < terms; ++t) {
        sum1 += pow1;
        sum2 += pow2;
        pow1 = (step1 * pow1).eval();
        pow2 = (step2 * pow2).eval();
    }
    return StarKernels{sum1 * v, sum2 * v_inv};
}

ComplexMatrix star(const StarOperands& ops, double tol) {
    const StarKernels k = star_kernels(ops, tol);
    const auto p = static_cast<Eigen::Index>(ops.p);
    const Eigen::Index n1 = ops.left.rows() - p;
    const Eigen::Index n2 = ops.right.rows() - p;
    const Blocks l = split(ops.left, n1);
    const Blocks r = split(ops.right, p);
    const ComplexMatrix& v = ops.amalgam;
    const ComplexMatrix v_inv = unitary_inverse(v);

    ComplexMatrix u(n1 + n2, n1 + n2);
    u.topLeftCorner(n1, n1) = l.b11 + l.b12 * k.K2 * r.b11 * v * l.b21;
    u.bottomRightCorner(n2, n2) = r.b22 + r.b21 * k.K1 * l.b22 * v_inv * r.b12;
    u.topRightCorner(n1, n2) = l.b12 * k.K2 * r.b12;
    u.bottomLeftCorner(n2, n1) = r.b21 * k.K1 * l.b21;
    return u;
}

ComplexMatrix block_swap(const ComplexMatrix& u, std::size_t first) {
    const auto f = static_cast<Eigen::Index>(first);
    if (f > u.rows()) {
        throw InvalidOperands("block_swap: split point beyond matrix size");
    }
    const Eigen::Index rest = u.rows() - f;
    const Blocks b = split(u, f);
    ComplexMatrix out(u.rows(), u.cols());
    out.topLeftCorner(rest, rest) = b.b22;
    out.topRightCorner(rest, f) = b.b21;
    out.bottomLeftCorner(f, rest) = b.b12;
    out.bottomRightCorner(f, f) = b.b11;
    return out;
}

double associativity_defect(const ComplexMatrix& u1, const ComplexMatrix& u2,
                            const ComplexMatrix& u3, const ComplexMatrix& v,
                            const ComplexMatrix& v_prime) {
    const auto p = static_cast<std::size_t>(v.rows());
    const auto pp = static_cast<std::size_t>(v_prime.rows());
    if (p + pp > static_cast<std::size_t>(u2.rows())) {
        throw InvalidOperands("associativity needs p + p' <= size of the middle operand");
    }
    const ComplexMatrix inner_right = star(StarOperands{u2, u3, v_prime, pp});
    const ComplexMatrix nested_right = star(StarOperands{u1, inner_right, v, p});
    const ComplexMatrix inner_left = star(StarOperands{u1, u2, v, p});
    const ComplexMatrix nested_left = star(StarOperands{inner_left, u3, v_prime, pp});
    return spectral_norm(nested_right - nested_left);
}

ComplexMatrix propagation_phases(const std::vector<double>& lengths, std::size_t size,
                                 double energy) {
    const double k = std::sqrt(energy);
    const auto n = static_cast<Eigen::Index>(size);
    ComplexMatrix v = ComplexMatrix::Identity(n, n);
    for (std::size_t i = 0; i < lengths.size(); ++i) {
        v(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) =
            std::polar(1.0, k * lengths[i]);
    }
    return v;
}

ComplexMatrix compose_smatrices(const ComplexMatrix& s_left, const ComplexMatrix& s_right,
                                const CutMap& cut_map, double energy, double tol) {
    if (!(energy > 0.0)) {
        throw NonpositiveEnergy("compose: energy must be positive");
    }
    const std::size_t p = cut_map.pairs.size();
    if (p > static_cast<std::size_t>(s_right.rows())) {
        throw InvalidOperands("compose: more cut lines than channels on the right");
    }
    std::vector<double> lengths;
    for (const auto& pair : cut_map.pairs) {
        lengths.push_back(pair.length);
    }
    const ComplexMatrix v = propagation_phases(lengths, static_cast<std::size_t>(s_right.rows()),
                                               energy);
    return star(StarOperands::with_identity(s_left, v * s_right * v, p), tol);
}

Factorization factorize_graph(const MetricGraph& g, const std::vector<std::string>& edge_ids,
                              double energy, double tol) {
    std::vector<TadpoleSplit> splits;
    const MetricGraph normal = normalize_tadpoles(g, &splits);
    std::vector<std::string> cut_ids;
    for (const auto& id : edge_ids) {
        const auto it = std::find_if(splits.begin(), splits.end(),
                                     [&](const TadpoleSplit& s) { return s.original == id; });
        if (it == splits.end()) {
            cut_ids.push_back(id);
        } else {
            cut_ids.push_back(it->first);
            cut_ids.push_back(it->second);
        }
    }
    const CutResult parts = cut(normal, cut_ids);

    Factorization f;
    f.direct = solve_scattering(assemble(g), energy).S;
    const ComplexMatrix s_left = solve_scattering(assemble(parts.left), energy).S;
    const ComplexMatrix s_right = solve_scattering(assemble(parts.right), energy).S;

    const std::size_t p = parts.map.pairs.size();
    std::vector<double> lengths;
    for (const auto& pair : parts.map.pairs) {
        lengths.push_back(pair.length);
    }
    const ComplexMatrix v = propagation_phases(lengths, static_cast<std::size_t>(s_right.rows()),
                                               energy);
    const StarOperands ops = StarOperands::with_identity(s_left, v * s_right * v, p);
    f.margin = condition_a(ops, tol).margin;
    const ComplexMatrix glued = star(ops, tol);

    // Composite channel order: left originals, then right originals.
    std::vector<std::string> order;
    const std::size_t n_left = parts.left.externals.size() - p;
    for (std::size_t i = 0; i < n_left; ++i) {
        order.push_back(parts.left.externals[i]);
    }
    for (std::size_t i = p; i < parts.right.externals.size(); ++i) {
        order.push_back(parts.right.externals[i]);
    }
    std::map<std::string, Eigen::Index> position;
    for (std::size_t i = 0; i < order.size(); ++i) {
        position[order[i]] = static_cast<Eigen::Index>(i);
    }
    const auto n = static_cast<Eigen::Index>(g.externals.size());
    std::vector<Eigen::Index> from(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        from[static_cast<std::size_t>(i)] = position.at(g.externals[static_cast<std::size_t>(i)]);
    }
    f.composed.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            f.composed(i, j) = glued(from[static_cast<std::size_t>(i)], from[static_cast<std::size_t>(j)]);
        }
    }
    f.defect = spectral_norm(f.composed - f.direct);
    return f;
}

} // namespace qgraph
