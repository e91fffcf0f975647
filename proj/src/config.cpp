#include "psifrac/config.hpp"

#include "psifrac/catalog.hpp"
#include "psifrac/error.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace psifrac {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed)
{
    if (!obj.is_object()) {
        fail(ErrorKind::Schema, where + ": expected an object");
    }
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!ok.count(it.key())) {
            const std::string key = where.empty() ? it.key() : where + "." + it.key();
            fail(ErrorKind::Schema, key + ": unknown key");
        }
    }
}

const json& require(const json& obj, const std::string& where, const char* key)
{
    if (!obj.contains(key)) {
        const std::string path = where.empty() ? key : where + "." + key;
        fail(ErrorKind::Schema, path + ": missing required key");
    }
    return obj.at(key);
}

double number(const json& obj, const std::string& where, const char* key)
{
    const json& v = require(obj, where, key);
    const std::string path = where + "." + key;
    if (!v.is_number()) {
        fail(ErrorKind::Schema, path + ": expected a number");
    }
    const double x = v.get<double>();
    if (!std::isfinite(x)) {
        fail(ErrorKind::Range, path + ": must be finite");
    }
    return x;
}

double number_or(const json& obj, const std::string& where, const char* key, double fallback)
{
    return obj.contains(key) ? number(obj, where, key) : fallback;
}

std::size_t count_or(const json& obj, const std::string& where, const char* key, std::size_t fallback)
{
    if (!obj.contains(key)) {
        return fallback;
    }
    const json& v = obj.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        fail(ErrorKind::Schema, where + "." + key + ": expected a nonnegative integer");
    }
    return static_cast<std::size_t>(v.get<long long>());
}

std::string text(const json& obj, const std::string& where, const char* key)
{
    const json& v = require(obj, where, key);
    if (!v.is_string()) {
        fail(ErrorKind::Schema, where + "." + key + ": expected a string");
    }
    return v.get<std::string>();
}

void range(bool ok, const std::string& key, const std::string& constraint)
{
    if (!ok) {
        fail(ErrorKind::Range, key + ": " + constraint);
    }
}

PsiFunction parse_psi_block(const json& j)
{
    check_keys(j, "psi", {"kind", "param", "samples"});
    const std::string kind = text(j, "psi", "kind");
    if (kind == "identity") {
        return PsiFunction::identity();
    }
    if (kind == "log") {
        return PsiFunction::logarithm();
    }
    if (kind == "power") {
        const double r = number(j, "psi", "param");
        range(r > 0.0, "psi.param", "power-law exponent must be > 0");
        return PsiFunction::power_law(r);
    }
    if (kind == "tabulated") {
        const json& s = require(j, "psi", "samples");
        if (!s.is_array()) {
            fail(ErrorKind::Schema, "psi.samples: expected an array of [t, psi] pairs");
        }
        std::vector<PsiSample> samples;
        for (const auto& pair : s) {
            if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
                fail(ErrorKind::Schema, "psi.samples: expected an array of [t, psi] pairs");
            }
            samples.push_back({pair[0].get<double>(), pair[1].get<double>()});
        }
        try {
            return PsiFunction::tabulated(std::move(samples));
        } catch (const Error& e) {
            fail(ErrorKind::Range, std::string("psi.samples: ") + e.what());
        }
    }
    fail(ErrorKind::Range, "psi.kind: must be identity, log, power or tabulated");
}

} // namespace

RunConfig parse_config_text(const std::string& content)
{
    json root;
    try {
        root = json::parse(content);
    } catch (const json::parse_error& e) {
        fail(ErrorKind::Parse, std::string("malformed JSON: ") + e.what());
    }
    check_keys(root, "", {"schema", "psi", "domain", "orders", "params", "rhs", "solver", "assumptions"});

    RunConfig cfg;
    if (root.contains("schema")) {
        if (!root["schema"].is_string()) {
            fail(ErrorKind::Schema, "schema: expected a string");
        }
        cfg.schema = root["schema"].get<std::string>();
        range(cfg.schema == kSchemaVersion, "schema", std::string("unsupported version, expected ") + kSchemaVersion);
    }

    cfg.psi = parse_psi_block(require(root, "", "psi"));

    const json& dom = require(root, "", "domain");
    check_keys(dom, "domain", {"a", "eta", "xi", "T"});
    cfg.domain = {number(dom, "domain", "a"), number(dom, "domain", "eta"), number(dom, "domain", "xi"),
                  number(dom, "domain", "T")};
    range(cfg.domain.a < cfg.domain.eta && cfg.domain.eta < cfg.domain.xi && cfg.domain.xi < cfg.domain.T, "domain",
          "require a < eta < xi < T");

    const json& ord = require(root, "", "orders");
    check_keys(ord, "orders", {"rho", "sigma", "delta"});
    cfg.orders = {number(ord, "orders", "rho"), number(ord, "orders", "sigma"), number(ord, "orders", "delta")};
    range(cfg.orders.rho > 1.0 && cfg.orders.rho <= 2.0, "orders.rho", "require 1 < rho <= 2");
    range(cfg.orders.sigma > 0.0 && cfg.orders.sigma <= 1.0, "orders.sigma", "require 0 < sigma <= 1");
    range(cfg.orders.delta > 0.0 && cfg.orders.delta < cfg.orders.sigma, "orders.delta", "require 0 < delta < sigma");

    const json& par = require(root, "", "params");
    check_keys(par, "params", {"lambda", "mu"});
    cfg.lambda = number(par, "params", "lambda");
    cfg.mu = number(par, "params", "mu");
    range(cfg.lambda >= 0.0, "params.lambda", "require lambda >= 0");
    range(cfg.mu >= 0.0, "params.mu", "require mu >= 0");

    const json& rhs = require(root, "", "rhs");
    check_keys(rhs, "rhs", {"expr", "manufactured"});
    if (rhs.contains("expr") == rhs.contains("manufactured")) {
        fail(ErrorKind::Schema, "rhs: give exactly one of expr or manufactured");
    }
    if (rhs.contains("expr")) {
        cfg.rhs_expr = text(rhs, "rhs", "expr");
        try {
            (void)rhs_from_id(cfg.rhs_expr, PsiFunction::identity(), 0.0);
        } catch (const Error&) {
            fail(ErrorKind::Range, "rhs.expr: unknown expression id '" + cfg.rhs_expr + "'");
        }
    } else {
        const json& m = rhs["manufactured"];
        check_keys(m, "rhs.manufactured", {"kappa", "coeffs", "l1", "l2"});
        ManufacturedSpec spec;
        spec.kappa = number(m, "rhs.manufactured", "kappa");
        range(spec.kappa - cfg.orders.sigma > 1.0, "rhs.manufactured.kappa", "require kappa - sigma > 1");
        if (m.contains("coeffs")) {
            const json& c = m["coeffs"];
            if (!c.is_array() || c.empty()) {
                fail(ErrorKind::Schema, "rhs.manufactured.coeffs: expected a nonempty array of numbers");
            }
            spec.coeffs.clear();
            for (const auto& x : c) {
                if (!x.is_number()) {
                    fail(ErrorKind::Schema, "rhs.manufactured.coeffs: expected a nonempty array of numbers");
                }
                spec.coeffs.push_back(x.get<double>());
            }
        }
        spec.l1 = number_or(m, "rhs.manufactured", "l1", 0.0);
        spec.l2 = number_or(m, "rhs.manufactured", "l2", 0.0);
        range(spec.l1 >= 0.0, "rhs.manufactured.l1", "require l1 >= 0");
        range(spec.l2 >= 0.0, "rhs.manufactured.l2", "require l2 >= 0");
        cfg.manufactured = spec;
    }

    if (root.contains("solver")) {
        const json& s = root["solver"];
        check_keys(s, "solver", {"n", "tol", "max_iter", "omega"});
        cfg.solver.n = count_or(s, "solver", "n", cfg.solver.n);
        cfg.solver.tol = number_or(s, "solver", "tol", cfg.solver.tol);
        cfg.solver.max_iter = count_or(s, "solver", "max_iter", cfg.solver.max_iter);
        cfg.solver.omega = number_or(s, "solver", "omega", cfg.solver.omega);
    }
    range(cfg.solver.n >= 4, "solver.n", "require n >= 4");
    range(cfg.solver.tol > 0.0, "solver.tol", "require tol > 0");
    range(cfg.solver.max_iter >= 1, "solver.max_iter", "require max_iter >= 1");
    range(cfg.solver.omega > 0.0 && cfg.solver.omega <= 1.0, "solver.omega", "require 0 < omega <= 1");

    if (root.contains("assumptions")) {
        const json& a = root["assumptions"];
        check_keys(a, "assumptions", {"L1", "L2", "L", "phi", "l_phi", "epsilon"});
        cfg.has_assumptions = true;
        cfg.L1 = number_or(a, "assumptions", "L1", 0.0);
        cfg.L2 = number_or(a, "assumptions", "L2", 0.0);
        cfg.L = number_or(a, "assumptions", "L", 0.0);
        cfg.l_phi = number_or(a, "assumptions", "l_phi", 0.0);
        cfg.epsilon = number_or(a, "assumptions", "epsilon", 0.0);
        if (a.contains("phi")) {
            cfg.phi = text(a, "assumptions", "phi");
            try {
                (void)test_function(cfg.phi);
            } catch (const Error&) {
                fail(ErrorKind::Range, "assumptions.phi: unknown function id '" + cfg.phi + "'");
            }
        }
        range(cfg.L1 >= 0.0, "assumptions.L1", "require L1 >= 0");
        range(cfg.L2 >= 0.0, "assumptions.L2", "require L2 >= 0");
        range(cfg.L >= 0.0, "assumptions.L", "require L >= 0");
        range(cfg.l_phi >= 0.0, "assumptions.l_phi", "require l_phi >= 0");
        range(cfg.epsilon >= 0.0, "assumptions.epsilon", "require epsilon >= 0");
    }

    const auto report = validate_psi(cfg.psi, cfg.domain, 256);
    if (!report.valid) {
        const auto& issue = report.issues.front();
        fail(ErrorKind::Range, "psi: invalid on the domain at t = " + std::to_string(issue.t) + " (" + issue.reason + ")");
    }
    return cfg;
}

RunConfig parse_config(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail(ErrorKind::Io, "cannot open config '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

ProblemSetup make_problem(const RunConfig& cfg)
{
    ProblemSetup s;
    auto& p = s.problem;
    p.orders = cfg.orders;
    p.lambda = cfg.lambda;
    p.mu = cfg.mu;
    p.domain = cfg.domain;
    p.psi = cfg.psi;
    if (cfg.manufactured) {
        p.f = [](double, double, double) { return 0.0; };
        s.manufactured = build_manufactured(p, *cfg.manufactured);
        p.f = s.manufactured->f;
    } else {
        p.f = rhs_from_id(cfg.rhs_expr, cfg.psi, cfg.domain.a);
    }

    auto& a = s.assumptions;
    if (cfg.has_assumptions) {
        a.L1 = cfg.L1;
        a.L2 = cfg.L2;
    } else if (cfg.manufactured) {
        a.L1 = cfg.manufactured->l1;
        a.L2 = cfg.manufactured->l2;
    }
    a.L = cfg.L;
    a.l_phi = cfg.l_phi;
    a.epsilon = cfg.epsilon;
    const auto phi = test_function(cfg.phi);
    const PsiFunction psi = cfg.psi;
    const double s0 = psi.eval(cfg.domain.a);
    a.Phi = [phi, psi, s0](double t) { return phi(psi.eval(t) - s0); };
    return s;
}

} // namespace psifrac
