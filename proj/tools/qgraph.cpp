// qgraph: command-line front end for graph documents.
//
// Exit codes: 0 success, 1 domain failure (invalid condition, no convergence,
// failed check), 2 input error (unreadable or malformed document, bad flags).

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qgraph/document.hpp"
#include "qgraph/errors.hpp"
#include "qgraph/scattering.hpp"
#include "qgraph/selftest.hpp"
#include "qgraph/starprod.hpp"

namespace {

using nlohmann::json;
using namespace qgraph;

constexpr int kDomainFailure = 1;
constexpr int kInputError = 2;

struct InputFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Shortest round-trip text, independent of the C locale.
std::string num(double v) {
    char buf[64];
    if (v == 0.0) {
        v = 0.0; // no "-0"
    }
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json matrix_json(const ComplexMatrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(complex_json(m(i, j)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

MetricGraph load_graph(const std::string& file) {
    try {
        return to_graph(load_document(file));
    } catch (const ParseError& e) {
        throw InputFailure(e.what());
    } catch (const InvalidGraph& e) {
        throw InputFailure(e.what());
    }
}

std::size_t worker_count() {
    const char* env = std::getenv("QGRAPH_WORKERS");
    if (env == nullptr || *env == '\0') {
        return 0;
    }
    std::size_t n = 0;
    const auto res = std::from_chars(env, env + std::char_traits<char>::length(env), n);
    if (res.ec != std::errc{} || *res.ptr != '\0') {
        throw InputFailure("QGRAPH_WORKERS must be a nonnegative integer");
    }
    return n;
}

struct Globals {
    std::optional<double> tol;
    std::uint64_t seed = selftest::Options{}.seed;
    bool json = false;
};

int cmd_validate(const Globals& g, const std::string& file) {
    const MetricGraph graph = load_graph(file);
    const double tol = g.tol.value_or(kValidationTolerance);
    json out = {{"vertices", json::array()}};
    bool ok = true;
    for (std::size_t i = 0; i < graph.vertices.size(); ++i) {
        const ValidationReport rep = validate(graph.vertices[i].bc, tol);
        std::string failed;
        if (!rep.rank_ok) {
            failed = "maximal rank";
        } else if (!rep.hermitian_ok) {
            failed = "hermiticity of A B^dagger";
        }
        ok = ok && rep.admissible();
        out["vertices"].push_back({{"index", i},
                                   {"rank", rep.rank_found},
                                   {"rank_ok", rep.rank_ok},
                                   {"hermiticity_defect", rep.hermiticity_defect},
                                   {"hermitian_ok", rep.hermitian_ok},
                                   {"real", rep.is_real_bc},
                                   {"failed", failed}});
        if (!g.json) {
            std::cout << "vertex " << i << ": rank " << rep.rank_found << "/"
                      << graph.vertices[i].bc.dim() << ", hermiticity defect "
                      << num(rep.hermiticity_defect) << (rep.is_real_bc ? ", real" : "")
                      << (failed.empty() ? ", ok" : ", INVALID (" + failed + ")") << "\n";
        }
    }
    if (ok) {
        const GlobalBC gbc = assemble(graph);
        out["global"] = {{"n", gbc.n}, {"m", gbc.m}, {"valid", true}};
        if (!g.json) {
            std::cout << "global: n = " << gbc.n << ", m = " << gbc.m << ", valid\n";
        }
    } else {
        out["global"] = {{"valid", false}};
        if (!g.json) {
            std::cout << "global: invalid\n";
        }
    }
    if (g.json) {
        std::cout << out.dump(2) << "\n";
    }
    return ok ? 0 : kDomainFailure;
}

struct SweepArgs {
    std::string file;
    double emin = 0.0;
    double emax = 0.0;
    std::size_t points = 100;
    std::string out = "-";
    bool uniform_e = false;
};

void write_sweep_csv(std::ostream& os, const std::vector<SweepPoint>& rows, std::size_t n) {
    os << "E,k";
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            const std::string s = "S_" + std::to_string(j) + "_" + std::to_string(k);
            os << ",re_" << s << ",im_" << s << ",abs2_" << s;
        }
    }
    os << ",unitarity_defect,at_eigenvalue,status\n";
    for (const SweepPoint& p : rows) {
        os << num(p.energy) << "," << num(std::sqrt(p.energy));
        const auto nn = static_cast<Eigen::Index>(n);
        for (Eigen::Index j = 0; j < nn; ++j) {
            for (Eigen::Index k = 0; k < nn; ++k) {
                if (p.result) {
                    const Complex z = p.result->S(j, k);
                    os << "," << num(z.real()) << "," << num(z.imag()) << "," << num(std::norm(z));
                } else {
                    os << ",nan,nan,nan";
                }
            }
        }
        if (p.result) {
            os << "," << num(p.result->unitarity_defect) << "," << (p.result->at_eigenvalue ? 1 : 0)
               << "," << (p.result->at_eigenvalue ? "EIGENVALUE" : "OK") << "\n";
        } else {
            os << ",nan,0,ERROR\n";
        }
    }
}

int cmd_sweep(const Globals& g, const SweepArgs& a) {
    const MetricGraph graph = load_graph(a.file);
    const GlobalBC gbc = assemble(graph);
    if (gbc.n == 0) {
        throw NoExternalLines("graph has no external lines; use spectrum instead");
    }
    std::vector<double> grid;
    try {
        grid = energy_grid(a.emin, a.emax, a.points,
                           a.uniform_e ? GridSpacing::UniformE : GridSpacing::UniformK);
    } catch (const BadWindow& e) {
        throw InputFailure(e.what());
    }
    const std::vector<SweepPoint> rows = sweep(gbc, grid, worker_count());

    std::ofstream file;
    if (a.out != "-") {
        file.open(a.out);
        if (!file) {
            throw InputFailure("cannot write '" + a.out + "'");
        }
    }
    std::ostream& os = a.out == "-" ? std::cout : file;
    if (g.json) {
        json arr = json::array();
        for (const SweepPoint& p : rows) {
            json row = {{"E", p.energy}, {"k", std::sqrt(p.energy)}};
            if (p.result) {
                row["S"] = matrix_json(p.result->S);
                row["unitarity_defect"] = p.result->unitarity_defect;
                row["at_eigenvalue"] = p.result->at_eigenvalue;
            } else {
                row["error"] = p.error;
            }
            arr.push_back(std::move(row));
        }
        os << arr.dump(2) << "\n";
    } else {
        write_sweep_csv(os, rows, gbc.n);
    }
    return 0;
}

int cmd_spectrum(const Globals& g, const std::string& file, double emin, double emax,
                 bool eigenfunctions, std::size_t grid_points) {
    const GlobalBC gbc = assemble(load_graph(file));
    SpectrumResult spec;
    try {
        spec = spectrum(gbc, emin, emax, grid_points, g.tol.value_or(kSpectrumTolerance));
    } catch (const BadWindow& e) {
        throw InputFailure(e.what());
    }
    json out = {{"window", {emin, emax}}, {"grid_points", spec.grid_points},
                {"eigenvalues", json::array()}};
    if (!g.json) {
        std::cout << "E,k,residual,multiplicity\n";
    }
    for (std::size_t i = 0; i < spec.eigenvalues.size(); ++i) {
        const double e = spec.eigenvalues[i];
        std::vector<EigenMode> modes;
        try {
            modes = eigenfunction(gbc, e);
        } catch (const NotAnEigenvalue&) {
            // accepted by the search tolerance but above the kernel tolerance
        }
        json entry = {{"E", e}, {"k", std::sqrt(e)}, {"residual", spec.residuals[i]},
                      {"multiplicity", modes.size()}};
        if (eigenfunctions) {
            entry["modes"] = json::array();
            for (const EigenMode& m : modes) {
                entry["modes"].push_back({{"alpha_hat", matrix_json(m.alpha_hat)},
                                          {"beta_hat", matrix_json(m.beta_hat)},
                                          {"exterior_norm", m.exterior_norm}});
            }
        }
        if (!g.json) {
            std::cout << num(e) << "," << num(std::sqrt(e)) << "," << num(spec.residuals[i]) << ","
                      << modes.size() << "\n";
            if (eigenfunctions) {
                for (std::size_t mi = 0; mi < modes.size(); ++mi) {
                    std::cout << "# mode " << mi << " alpha_hat";
                    for (Complex z : modes[mi].alpha_hat) {
                        std::cout << " " << num(z.real()) << (z.imag() < 0 ? "" : "+")
                                  << num(z.imag()) << "i";
                    }
                    std::cout << " beta_hat";
                    for (Complex z : modes[mi].beta_hat) {
                        std::cout << " " << num(z.real()) << (z.imag() < 0 ? "" : "+")
                                  << num(z.imag()) << "i";
                    }
                    std::cout << "\n";
                }
            }
        }
        out["eigenvalues"].push_back(std::move(entry));
    }
    if (g.json) {
        std::cout << out.dump(2) << "\n";
    }
    return 0;
}

std::vector<std::string> split_commas(const std::vector<std::string>& items) {
    std::vector<std::string> out;
    for (const std::string& item : items) {
        std::stringstream ss(item);
        std::string part;
        while (std::getline(ss, part, ',')) {
            if (!part.empty()) {
                out.push_back(part);
            }
        }
    }
    return out;
}

int cmd_compose(const Globals& g, const std::string& file, const std::vector<std::string>& cut_args,
                const std::vector<double>& energies) {
    const MetricGraph graph = load_graph(file);
    const std::vector<std::string> cut_ids = split_commas(cut_args);
    const double tol = g.tol.value_or(kConditionATolerance);
    json out = json::array();
    if (!g.json) {
        std::cout << "E,defect,condition_a_margin,status\n";
    }
    for (double e : energies) {
        json row = {{"E", e}};
        std::string line;
        try {
            const Factorization f = factorize_graph(graph, cut_ids, e, tol);
            row["defect"] = f.defect;
            row["condition_a_margin"] = f.margin;
            row["status"] = "OK";
            line = num(e) + "," + num(f.defect) + "," + num(f.margin) + ",OK";
        } catch (const ConditionAViolated& ex) {
            row["condition_a_margin"] = ex.margin();
            row["status"] = "SKIPPED";
            line = num(e) + ",nan," + num(ex.margin()) + ",SKIPPED";
        } catch (const NotACut& ex) {
            throw InputFailure(ex.what());
        } catch (const UnknownEdge& ex) {
            throw InputFailure(ex.what());
        }
        if (g.json) {
            out.push_back(std::move(row));
        } else {
            std::cout << line << "\n";
        }
    }
    if (g.json) {
        std::cout << out.dump(2) << "\n";
    }
    return 0;
}

int cmd_selftest(const Globals& g, double scale, const std::string& fixtures) {
    selftest::Options opt;
    opt.seed = g.seed;
    opt.scale = scale;
    opt.fixtures = fixtures;
    const auto results = selftest::run_all(opt);
    std::size_t passed = 0;
    json out = json::array();
    for (const auto& r : results) {
        passed += r.passed ? 1 : 0;
        if (g.json) {
            out.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
        } else {
            std::cout << selftest::format_line(r) << "\n";
        }
    }
    if (g.json) {
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << passed << "/" << results.size() << " checks passed\n";
    }
    return passed == results.size() ? 0 : kDomainFailure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Scattering on metric graphs"};
    app.require_subcommand(1);
    Globals g;
    double tol = 0.0;
    auto* tol_opt = app.add_option("--tol", tol, "tolerance for the chosen command")
                        ->check(CLI::PositiveNumber);
    app.add_option("--seed", g.seed, "seed for randomized checks");
    app.add_flag("--json", g.json, "structured output instead of CSV/text");

    std::string file;
    auto* validate_cmd = app.add_subcommand("validate", "check every vertex condition");
    validate_cmd->add_option("file", file)->required();

    SweepArgs sw;
    auto* sweep_cmd = app.add_subcommand("sweep", "S(E) over an energy grid");
    sweep_cmd->add_option("file", sw.file)->required();
    sweep_cmd->add_option("--emin", sw.emin)->required();
    sweep_cmd->add_option("--emax", sw.emax)->required();
    sweep_cmd->add_option("--points", sw.points);
    sweep_cmd->add_option("--out", sw.out, "output file, '-' for stdout");
    sweep_cmd->add_flag("--uniform-e", sw.uniform_e, "uniform in E instead of k");

    double emin = 0.0, emax = 0.0;
    bool modes = false;
    std::size_t grid = 0;
    auto* spectrum_cmd = app.add_subcommand("spectrum", "embedded eigenvalues in a window");
    spectrum_cmd->add_option("file", file)->required();
    spectrum_cmd->add_option("--emin", emin)->required();
    spectrum_cmd->add_option("--emax", emax)->required();
    spectrum_cmd->add_option("--grid", grid, "k-grid size, 0 = automatic");
    spectrum_cmd->add_flag("--eigenfunctions", modes, "dump alpha_hat, beta_hat");

    std::vector<std::string> cut;
    std::vector<double> energies;
    auto* compose_cmd = app.add_subcommand("compose", "glue the parts of a cut graph");
    compose_cmd->add_option("file", file)->required();
    compose_cmd->add_option("--cut", cut, "edge ids, comma separated")->required();
    compose_cmd->add_option("--energies", energies)->required()->delimiter(',');

    double scale = 1.0;
    std::string fixtures = QGRAPH_FIXTURE_DIR;
    auto* selftest_cmd = app.add_subcommand("selftest", "run the bundled checks");
    selftest_cmd->add_option("--scale", scale, "sample-count multiplier")->check(CLI::PositiveNumber);
    selftest_cmd->add_option("--fixtures", fixtures, "document directory, empty to skip");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kInputError;
    }
    if (*tol_opt) {
        g.tol = tol;
    }

    try {
        if (*validate_cmd) {
            return cmd_validate(g, file);
        }
        if (*sweep_cmd) {
            return cmd_sweep(g, sw);
        }
        if (*spectrum_cmd) {
            return cmd_spectrum(g, file, emin, emax, modes, grid);
        }
        if (*compose_cmd) {
            return cmd_compose(g, file, cut, energies);
        }
        return cmd_selftest(g, scale, fixtures);
    } catch (const InputFailure& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDomainFailure;
    }
}
