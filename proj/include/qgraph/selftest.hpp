#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "qgraph/boundary.hpp"

namespace qgraph::selftest {

struct Options {
    std::uint64_t seed = 20240611;
    /// Multiplies the sample counts of the randomized checks (1 = full size).
    double scale = 1.0;
    /// Directory with the bundled graph documents; empty skips the fixture check.
    std::filesystem::path fixtures;
};

struct CheckResult {
    int id = 0; ///< 0 for checks outside the numbered acceptance list
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

/// Standard 3-line vertex: S is the constant -I + (2/3)J at several energies,
/// trace -1, spectrum {1, -1, -1}. Takes the condition so a corrupted
/// version can be fed in.
CheckResult check_kirchhoff_star(const BoundaryCondition& bc);
CheckResult check_ring();
CheckResult check_tadpole();
CheckResult check_robin_delta();
CheckResult check_cyclic();
CheckResult check_sl2_family(const Options& opt);
CheckResult check_random_graphs(const Options& opt);
CheckResult check_star_algebra(const Options& opt);
CheckResult check_von_neumann(const Options& opt);
CheckResult check_pseudoinverse(const Options& opt);
/// Chain of two delta vertices and the ring, glued along cut lines and
/// compared with the closed forms and the direct solve.
CheckResult check_compositions();
/// Loads every bundled document and compares the ones with closed forms.
CheckResult check_fixtures(const std::filesystem::path& dir);

/// The ten numbered acceptance checks in order.
std::vector<CheckResult> run_acceptance(const Options& opt);

/// Acceptance checks plus the fixture check when a directory is given.
std::vector<CheckResult> run_all(const Options& opt);

std::string format_line(const CheckResult& r);

} // namespace qgraph::selftest
