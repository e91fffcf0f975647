#include "psifrac/catalog.hpp"
#include "psifrac/certify.hpp"
#include "psifrac/config.hpp"
#include "psifrac/csv.hpp"
#include "psifrac/error.hpp"
#include "psifrac/frac_ops.hpp"
#include "psifrac/langevin.hpp"
#include "psifrac/specfn.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>

using namespace psifrac;

namespace {

int exit_code(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::NoConvergence: return 2;
    case ErrorKind::DegenerateProblem: return 3;
    default: return 1;
    }
}

bool quiet = false;

void note(const std::string& msg)
{
    if (!quiet) {
        std::cerr << msg << '\n';
    }
}

int run_solve(const std::string& config, const std::string& out, const std::string& plot_prefix)
{
    const auto cfg = parse_config(config);
    const auto setup = make_problem(cfg);
    try {
        auto b = solve_picard(setup.problem, cfg.solver);
        for (const auto& w : b.warnings) {
            note("warning: " + w);
        }
        note("converged in " + std::to_string(b.iterations) + " iterations, update norm " +
             format_double(b.update_norm));
        note("residual interior " + format_double(b.residual.interior) + ", u(eta) " +
             format_double(b.residual.at_eta) + ", nonlocal " + format_double(b.residual.nonlocal));
        if (setup.manufactured) {
            double err = 0.0;
            for (std::size_t i = 0; i < b.u.size(); ++i) {
                err = std::max(err, std::abs(b.u[i] - setup.manufactured->exact(b.mesh->t(i))));
            }
            note("max error against manufactured solution " + format_double(err));
        }
        emit_csv(b, out);
        if (!plot_prefix.empty()) {
            plot_data(b, plot_prefix);
        }
    } catch (const NoConvergenceError& e) {
        std::cerr << e.what() << '\n';
        if (!plot_prefix.empty()) {
            plot_data(e.bundle(), plot_prefix);
        }
        return 2;
    }
    return 0;
}

int run_certify(const std::string& config, const std::string& out)
{
    const auto cfg = parse_config(config);
    const auto setup = make_problem(cfg);
    const auto mesh = build_mesh(setup.problem.psi, setup.problem.domain, cfg.solver.n);
    const auto sc = structural_constants(setup.problem, *mesh);
    const auto u = uniqueness_certificate(setup.problem, setup.assumptions, *mesh);
    const auto e = existence_certificate(setup.problem, setup.assumptions, *mesh);
    const double kappa0 = std::pow(mesh->k(mesh->intervals()), 1.0 - cfg.orders.delta) / psifrac::gamma(2.0 - cfg.orders.delta);
    std::string text = named_csv(certificate_rows(sc, u, e, kappa0));
    text += std::string("UNIQUENESS: ") + (u.holds ? "PASS" : "FAIL") + "\n";
    text += std::string("EXISTENCE: ") + (e.holds ? "PASS" : "FAIL") + "\n";
    write_text(out, text);
    return 0;
}

int run_stability(const std::string& config, const std::string& variant, double epsilon, bool has_epsilon,
                  const std::string& out)
{
    const auto cfg = parse_config(config);
    auto setup = make_problem(cfg);
    if (has_epsilon) {
        setup.assumptions.epsilon = epsilon;
    }
    const auto mesh = build_mesh(setup.problem.psi, setup.problem.domain, cfg.solver.n);
    StabilityReport r;
    if (variant == "uh" || variant == "guh") {
        r = uh_bound(setup.problem, setup.assumptions, *mesh, variant == "guh");
        note("C_eps " + format_double(r.c_eps) + ", kappa0 " + format_double(r.kappa0) + ", bound " +
             format_double(r.uh_bound));
    } else {
        r = uhr_bound(setup.problem, setup.assumptions, *mesh, variant == "guhr");
    }
    for (const auto& w : r.warnings) {
        note("warning: " + w);
    }
    emit_csv(r, out);
    return 0;
}

int run_op_apply(const std::string& op, double order, const std::string& psi_text, double a, double b, std::size_t n,
                 const std::string& fn, const std::string& out)
{
    const auto psi = parse_psi(psi_text);
    const auto report = validate_psi(psi, a, b, 256);
    if (!report.valid) {
        fail(ErrorKind::Range, "psi: invalid on [a, b] (" + report.issues.front().reason + ")");
    }
    const auto mesh = build_mesh(psi, a, b, n);
    const auto u = GridFunction::from_k(mesh, test_function(fn));
    GridFunction r = u;
    if (op == "jleft") {
        r = frac_integral_left(order, u);
    } else if (op == "jright") {
        r = frac_integral_right(order, u);
    } else {
        r = caputo_left(order, u);
    }
    std::string text = "t,value\n";
    for (std::size_t i = 0; i < mesh->size(); ++i) {
        text += format_double(mesh->t(i)) + "," + format_double(r[i]) + "\n";
    }
    write_text(out, text);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"psi-fractional calculus toolkit"};
    app.require_subcommand(1);
    app.add_flag("--quiet", quiet, "suppress diagnostics on stderr");

    std::string config, out, plot_prefix, variant = "uh";
    double epsilon = 0.0;

    auto* solve = app.add_subcommand("solve", "solve the boundary value problem");
    solve->add_option("--config", config, "JSON run configuration")->required();
    solve->add_option("--out", out, "solution CSV (default stdout)");
    solve->add_option("--plot-prefix", plot_prefix, "write <prefix>_solution.csv and <prefix>_trace.csv");
    solve->add_flag("--quiet", quiet);

    auto* certify = app.add_subcommand("certify", "evaluate existence and uniqueness constants");
    certify->add_option("--config", config, "JSON run configuration")->required();
    certify->add_option("--out", out, "output path (default stdout)");
    certify->add_flag("--quiet", quiet);

    auto* stability = app.add_subcommand("stability", "Ulam-Hyers type bounds");
    stability->add_option("--config", config, "JSON run configuration")->required();
    stability->add_option("--variant", variant, "uh, guh, uhr or guhr")
        ->check(CLI::IsMember({"uh", "guh", "uhr", "guhr"}));
    auto* eps_opt = stability->add_option("--epsilon", epsilon, "perturbation size");
    stability->add_option("--out", out, "output path (default stdout)");
    stability->add_flag("--quiet", quiet);

    double alpha = 1.0, beta = 1.0, z = 0.0;
    auto* ml = app.add_subcommand("ml-eval", "Mittag-Leffler function");
    ml->add_option("--alpha", alpha)->required();
    ml->add_option("--beta", beta);
    ml->add_option("--z", z)->required();
    ml->add_flag("--quiet", quiet);

    std::string op, psi_text = "identity", fn = "one";
    double order = 0.5, a = 0.0, b = 1.0;
    std::size_t n = 512;
    auto* opa = app.add_subcommand("op-apply", "apply a fractional operator to a catalog function");
    opa->add_option("--op", op)->required()->check(CLI::IsMember({"jleft", "jright", "caputo"}));
    opa->add_option("--order", order)->required();
    opa->add_option("--psi", psi_text);
    opa->add_option("--a", a);
    opa->add_option("--b", b);
    opa->add_option("--n", n);
    opa->add_option("--fn", fn);
    opa->add_option("--out", out);
    opa->add_flag("--quiet", quiet);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*solve) {
            return run_solve(config, out, plot_prefix);
        }
        if (*certify) {
            return run_certify(config, out);
        }
        if (*stability) {
            return run_stability(config, variant, epsilon, eps_opt->count() > 0, out);
        }
        if (*ml) {
            MLParams p;
            p.alpha = alpha;
            p.beta = beta;
            std::printf("%.15g\n", mittag_leffler(p, z));
            return 0;
        }
        if (*opa) {
            return run_op_apply(op, order, psi_text, a, b, n, fn, out);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
