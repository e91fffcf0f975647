#include "psifrac/langevin.hpp"

#include "psifrac/specfn.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace psifrac {

void LangevinProblem::validate() const
{
    const auto& o = orders;
    if (!(o.rho > 1.0 && o.rho <= 2.0)) {
        fail(ErrorKind::InvalidParameter, "rho must lie in (1, 2]");
    }
    if (!(o.sigma > 0.0 && o.sigma <= 1.0)) {
        fail(ErrorKind::InvalidParameter, "sigma must lie in (0, 1]");
    }
    if (!(o.delta > 0.0 && o.delta < o.sigma)) {
        fail(ErrorKind::InvalidParameter, "delta must lie in (0, sigma)");
    }
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        fail(ErrorKind::InvalidParameter, "lambda must be finite and >= 0");
    }
    if (!(mu >= 0.0) || !std::isfinite(mu)) {
        fail(ErrorKind::InvalidParameter, "mu must be finite and >= 0");
    }
    domain.validate();
    if (!f) {
        fail(ErrorKind::InvalidParameter, "right-hand side is not set");
    }
}

namespace {

// (J^α)[1] and (J^α)[K] at K.
double j_one(double alpha, double K) { return std::pow(K, alpha) / gamma(alpha + 1.0); }
double j_k(double alpha, double K) { return std::pow(K, alpha + 1.0) / gamma(alpha + 2.0); }

using NodeRhs = std::function<double(std::size_t, double, double)>;

NodeRhs node_rhs(const LangevinProblem& p, const Mesh& mesh)
{
    return [&p, &mesh](std::size_t i, double u, double d) { return p.f(mesh.t(i), u, d); };
}

std::pair<std::vector<double>, std::vector<double>> apply_core(const LangevinProblem& p, const Mesh& mesh,
                                                               const StructuralConstants& sc,
                                                               const NodeRhs& rhs,
                                                               const std::vector<double>& u,
                                                               const std::vector<double>& du)
{
    const auto& o = p.orders;
    const double h = mesh.step();
    const std::size_t n = mesh.size();
    const std::size_t N = n - 1;
    const auto& bn = mesh.boundary();

    std::vector<double> fu(n);
    for (std::size_t i = 0; i < n; ++i) {
        fu[i] = rhs(i, u[i], du[i]);
        if (!std::isfinite(fu[i])) {
            fail(ErrorKind::NonFinite, "right-hand side is not finite at t = " + std::to_string(mesh.t(i)));
        }
    }

    const auto Jf = rl_integral(o.rho + o.sigma, h, fu);
    const auto Jf_d = rl_integral(o.rho + o.sigma - o.delta, h, fu);
    const double A = Jf[bn.eta_index];
    const double B = Jf[N] - p.mu * rl_integral_at(o.rho + o.sigma + o.delta, h, fu, bn.xi_index);

    std::vector<double> Ju(n, 0.0), Ju_d(n, 0.0);
    double C = 0.0, D = 0.0;
    if (p.lambda != 0.0) {
        Ju = rl_integral(o.sigma, h, u);
        Ju_d = rl_integral(o.sigma - o.delta, h, u);
        C = Ju[bn.eta_index];
        D = Ju[N] - p.mu * rl_integral_at(o.sigma + o.delta, h, u, bn.xi_index);
    }

    const double lam = p.lambda;
    std::vector<double> out(n), dout(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = -lam * Ju[i] + Jf[i] + sc.d11[i] * A + sc.d12[i] * B + lam * sc.d21[i] * C -
                 lam * sc.d22[i] * D;
        dout[i] = -lam * Ju_d[i] + Jf_d[i] + sc.dd11[i] * A + sc.dd12[i] * B + lam * sc.dd21[i] * C -
                  lam * sc.dd22[i] * D;
    }
    return {std::move(out), std::move(dout)};
}

double sup_diff(const std::vector<double>& a, const std::vector<double>& b)
{
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

SolutionBundle picard_core(const LangevinProblem& p, const MeshPtr& mesh, const SolverConfig& cfg,
                           const NodeRhs& rhs, std::vector<double> u, std::vector<double> du)
{
    if (!(cfg.omega > 0.0 && cfg.omega <= 1.0)) {
        fail(ErrorKind::InvalidParameter, "relaxation omega must lie in (0, 1]");
    }
    if (!(cfg.tol > 0.0)) {
        fail(ErrorKind::InvalidParameter, "tolerance must be > 0");
    }
    const auto sc = structural_constants(p, *mesh);

    SolutionBundle b;
    b.mesh = mesh;
    double omega = cfg.omega;
    int growth = 0;
    bool converged = false;
    for (std::size_t it = 1; it <= cfg.max_iter; ++it) {
        auto [nu, ndu] = apply_core(p, *mesh, sc, rhs, u, du);
        if (omega != 1.0) {
            for (std::size_t i = 0; i < nu.size(); ++i) {
                nu[i] = (1.0 - omega) * u[i] + omega * nu[i];
                ndu[i] = (1.0 - omega) * du[i] + omega * ndu[i];
            }
        }
        const double norm = std::max(sup_diff(nu, u), sup_diff(ndu, du));
        if (!std::isfinite(norm)) {
            fail(ErrorKind::NonFinite, "iteration diverged to non-finite values");
        }
        growth = (!b.trace.empty() && norm > b.trace.back()) ? growth + 1 : 0;
        b.trace.push_back(norm);
        u = std::move(nu);
        du = std::move(ndu);
        b.iterations = it;
        b.update_norm = norm;
        if (norm < cfg.tol) {
            converged = true;
            break;
        }
        if (growth >= 3 && omega > 0.5) {
            omega = 0.5;
            growth = 0;
            b.warnings.push_back("update norm grew for 3 iterations; relaxation lowered to 0.5 at iteration " +
                                 std::to_string(it));
        }
    }
    b.omega = omega;
    b.u = std::move(u);
    b.du = std::move(du);
    b.u[0] = 0.0;

    bool negative = false;
    for (std::size_t i = 0; i < mesh->size() && !negative; ++i) {
        negative = rhs(i, b.u[i], b.du[i]) < 0.0;
    }
    if (negative) {
        b.warnings.push_back("right-hand side takes negative values along the solution");
    }

    if (!converged) {
        b.residual = residual(p, GridFunction(mesh, b.u));
        throw NoConvergenceError("NoConvergence: update norm " + std::to_string(b.update_norm) + " after " +
                                     std::to_string(b.iterations) + " iterations",
                                 std::move(b));
    }
    return b;
}

} // namespace

StructuralConstants structural_constants(const LangevinProblem& p, const Mesh& mesh)
{
    const auto& o = p.orders;
    const auto& bn = mesh.boundary();
    const double Ke = mesh.k(bn.eta_index);
    const double Kx = mesh.k(bn.xi_index);
    const double KT = mesh.k(mesh.intervals());
    const double s = o.sigma;
    const double d = o.delta;

    StructuralConstants sc;
    sc.sigma11 = j_one(s, Ke);
    sc.sigma12 = j_k(s, Ke);
    sc.sigma21 = j_one(s, KT) - p.mu * j_one(s + d, Kx);
    sc.sigma22 = j_k(s, KT) - p.mu * j_k(s + d, Kx);
    sc.delta = sc.sigma11 * sc.sigma22 - sc.sigma12 * sc.sigma21;

    const double scale = std::max(std::abs(sc.sigma11 * sc.sigma22), std::abs(sc.sigma12 * sc.sigma21));
    if (!(std::abs(sc.delta) > 1e-12 * scale)) {
        fail(ErrorKind::DegenerateProblem, "determinant of the boundary system vanishes");
    }

    sc.delta_explicit = std::pow(KT, s) * (KT - Ke) / gamma(s + 2.0) -
                        p.mu * std::pow(Kx, s + d) * ((s + 1.0) * (Kx - Ke) - d * Ke) /
                            (gamma(s + d + 2.0) * (s + 1.0));
    sc.cross_check = std::abs(sc.delta - sc.sigma11 * sc.delta_explicit) / std::abs(sc.delta);

    const std::size_t n = mesh.size();
    sc.d11.resize(n);
    sc.d12.resize(n);
    sc.d21.resize(n);
    sc.d22.resize(n);
    sc.dd11.resize(n);
    sc.dd12.resize(n);
    sc.dd21.resize(n);
    sc.dd22.resize(n);
    const double g1 = gamma(s - d + 1.0);
    const double g2 = gamma(s - d + 2.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double K = mesh.k(i);
        const double phi1 = j_one(s, K);
        const double phi2 = j_k(s, K);
        const double dphi1 = std::pow(K, s - d) / g1;
        const double dphi2 = std::pow(K, s - d + 1.0) / g2;
        sc.d11[i] = -(sc.sigma22 * phi1 - sc.sigma21 * phi2) / sc.delta;
        sc.d12[i] = (sc.sigma12 * phi1 - sc.sigma11 * phi2) / sc.delta;
        sc.d21[i] = -sc.d11[i];
        sc.d22[i] = sc.d12[i];
        sc.dd11[i] = -(sc.sigma22 * dphi1 - sc.sigma21 * dphi2) / sc.delta;
        sc.dd12[i] = (sc.sigma12 * dphi1 - sc.sigma11 * dphi2) / sc.delta;
        sc.dd21[i] = -sc.dd11[i];
        sc.dd22[i] = sc.dd12[i];
    }
    return sc;
}

std::pair<std::vector<double>, std::vector<double>> apply_Psi(const LangevinProblem& p, const Mesh& mesh,
                                                              const StructuralConstants& sc,
                                                              const std::vector<double>& u,
                                                              const std::vector<double>& du)
{
    if (u.size() != mesh.size() || du.size() != mesh.size()) {
        fail(ErrorKind::InvalidParameter, "u and du must match the mesh");
    }
    return apply_core(p, mesh, sc, node_rhs(p, mesh), u, du);
}

ResidualReport residual(const LangevinProblem& p, const GridFunction& u)
{
    const Mesh& mesh = *u.mesh();
    const auto& o = p.orders;
    const std::size_t n = mesh.size();
    const auto& bn = mesh.boundary();

    const auto ds = caputo_left(o.sigma, u);
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = ds[i] + p.lambda * u[i];
    }
    const auto lhs = caputo_left(o.rho, GridFunction(u.mesh(), std::move(v)));
    const auto dd = caputo_left(o.delta, u);

    ResidualReport r;
    r.pointwise.assign(n, 0.0);
    for (std::size_t i = 2; i + 2 < n; ++i) {
        r.pointwise[i] = std::abs(lhs[i] - p.f(mesh.t(i), u[i], dd[i]));
        r.interior = std::max(r.interior, r.pointwise[i]);
    }
    r.at_a = std::abs(u[0]);
    r.at_eta = std::abs(u[bn.eta_index]);
    r.nonlocal = std::abs(u[n - 1] - p.mu * frac_integral_left_at(o.delta, u, bn.xi_index));
    return r;
}

SolutionBundle solve_picard(const LangevinProblem& p, const SolverConfig& cfg,
                            const std::function<double(double)>& initial)
{
    p.validate();
    return solve_picard(p, build_mesh(p.psi, p.domain, cfg.n), cfg, initial);
}

SolutionBundle solve_picard(const LangevinProblem& p, MeshPtr mesh, const SolverConfig& cfg,
                            const std::function<double(double)>& initial)
{
    p.validate();
    std::vector<double> u(mesh->size(), 0.0), du(mesh->size(), 0.0);
    if (initial) {
        auto g = GridFunction::from_t(mesh, initial);
        u = g.values();
        du = caputo_left(p.orders.delta, g).values();
    }
    auto b = picard_core(p, mesh, cfg, node_rhs(p, *mesh), std::move(u), std::move(du));
    b.residual = residual(p, GridFunction(mesh, b.u));
    return b;
}

SolutionBundle solve_linear(const LangevinProblem& p, const GridFunction& F, const SolverConfig& cfg)
{
    const MeshPtr& mesh = F.mesh();
    LangevinProblem q = p;
    const auto values = F.values();
    const auto nodes = mesh->nodes();
    // Residual and warnings evaluate f by time; map each node time back to its sample.
    q.f = [values, nodes](double t, double, double) {
        auto it = std::lower_bound(nodes.begin(), nodes.end(), t);
        std::size_t i = static_cast<std::size_t>(it - nodes.begin());
        if (i == nodes.size() || (i > 0 && t - nodes[i - 1] < nodes[i] - t)) {
            i = (i == 0) ? 0 : i - 1;
        }
        return values[i];
    };
    q.validate();

    if (p.lambda > 0.0) {
        NodeRhs rhs = [&values](std::size_t i, double, double) { return values[i]; };
        std::vector<double> zero(mesh->size(), 0.0);
        auto b = picard_core(q, mesh, cfg, rhs, zero, zero);
        b.residual = residual(q, GridFunction(mesh, b.u));
        return b;
    }

    const auto& o = p.orders;
    const auto sc = structural_constants(q, *mesh);
    const double h = mesh->step();
    const std::size_t N = mesh->intervals();
    const auto& bn = mesh->boundary();
    const auto JF = rl_integral(o.rho + o.sigma, h, values);
    const auto JF_d = rl_integral(o.rho + o.sigma - o.delta, h, values);
    const double A = JF[bn.eta_index];
    const double B = JF[N] - p.mu * rl_integral_at(o.rho + o.sigma + o.delta, h, values, bn.xi_index);

    SolutionBundle b;
    b.mesh = mesh;
    b.u.resize(mesh->size());
    b.du.resize(mesh->size());
    for (std::size_t i = 0; i < mesh->size(); ++i) {
        b.u[i] = JF[i] + sc.d11[i] * A + sc.d12[i] * B;
        b.du[i] = JF_d[i] + sc.dd11[i] * A + sc.dd12[i] * B;
    }
    b.u[0] = 0.0;
    b.iterations = 0;
    b.residual = residual(q, GridFunction(mesh, b.u));
    return b;
}

} // namespace psifrac
