#pragma once

#include "psifrac/certify.hpp"
#include "psifrac/langevin.hpp"
#include "psifrac/psi.hpp"

#include <optional>
#include <string>

namespace psifrac {

inline constexpr const char* kSchemaVersion = "psifrac/1";

/**
 * Run description read from JSON:
 *
 *   schema       "psifrac/1" (optional)
 *   psi          {kind: identity|log|power|tabulated, param, samples: [[t, psi], ...]}
 *   domain       {a, eta, xi, T}
 *   orders       {rho, sigma, delta}
 *   params       {lambda, mu}
 *   rhs          {expr: <id>} or {manufactured: {kappa, coeffs, l1, l2}}
 *   solver       {n, tol, max_iter, omega}                       (optional)
 *   assumptions  {L1, L2, L, phi: <test function id>, l_phi, epsilon} (optional)
 */
struct RunConfig {
    std::string schema = kSchemaVersion;
    PsiFunction psi = PsiFunction::identity();
    Domain domain;
    Orders orders;
    double lambda = 0.0;
    double mu = 0.0;
    std::string rhs_expr;                          // empty when manufactured
    std::optional<ManufacturedSpec> manufactured;
    SolverConfig solver;
    bool has_assumptions = false;
    double L1 = 0.0, L2 = 0.0, L = 0.0;
    std::string phi = "one";
    double l_phi = 0.0;
    double epsilon = 0.0;
};

/// ParseError, SchemaError (unknown or mistyped key) or RangeError; the
/// message names the offending key.
RunConfig parse_config(const std::string& path);
RunConfig parse_config_text(const std::string& text);

struct ProblemSetup {
    LangevinProblem problem;
    std::optional<Manufactured> manufactured;
    Assumptions assumptions;
};

/// Builds the problem. Without an assumptions block, L1/L2 default to the
/// manufactured l1/l2.
ProblemSetup make_problem(const RunConfig& cfg);

} // namespace psifrac
