#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "confocal/continuous.hpp"
#include "confocal/discrete.hpp"
#include "confocal/netio.hpp"

namespace confocal::verify {

struct SuiteResult {
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = true;
    long count = 0;
    long skipped = 0;

    void add(double r);
    void skip() { ++skipped; }
    void close() { pass = count == 0 ? true : max_residual <= tolerance; }
};

struct Report {
    std::map<std::string, SuiteResult> suites;
    nlohmann::json config_echo;

    bool pass() const;
    std::vector<std::string> failing() const;
    nlohmann::json to_json() const;
};

// Per-suite tolerance overrides; unset suites use the built-in defaults
// (which depend on N for some suites).
struct Tolerances {
    std::map<std::string, double> overrides;

    double get(const std::string& suite, double fallback) const;
};

// Identity suites for a discrete confocal net evaluated from the closed
// form over the window.  parities: subset of {0 (integer), 1 (half)}.
//
// Suites (all parities combined): depd, koenigs_multiratio, orthogonality,
// product, quadric, scalar, radial, factorization, boundary, planarity;
// N=2 adds conics, tau_closed_form, tau_commute, isothermic; N=3 adds
// umbilic_g2, umbilic_g5, d_consistency.
Report verify_discrete(const discrete::Params& p, const discrete::Window& window,
                       const std::vector<int>& parities,
                       const Tolerances& tol = {});

// Same point-based suites run against stored net values (e.g. a generated
// or hand-edited file); closed-form-only suites (umbilics, d_consistency)
// are omitted.  Points absent from the file are skipped, not errors.
Report verify_net(const io::Net& net, const Tolerances& tol = {});

// Continuous reference suites over an interior sample grid (grid[i] samples
// per axis): quadric_membership, squared_coordinates, sphere_identity,
// radial_identity, orthogonality, isothermic_ratio, inversion_roundtrip,
// epd_decay (residual = decay factor when h shrinks 10x; tolerance 1/50).
Report verify_continuous(const continuous::Params& p, const std::vector<int>& grid,
                         const Tolerances& tol = {});

}  // namespace confocal::verify
