#include "psifrac/certify.hpp"

#include "psifrac/error.hpp"
#include "psifrac/specfn.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace psifrac {

const char* to_string(StabilityVariant v) noexcept
{
    switch (v) {
    case StabilityVariant::UH: return "uh";
    case StabilityVariant::GeneralizedUH: return "guh";
    case StabilityVariant::UHR: return "uhr";
    case StabilityVariant::GeneralizedUHR: return "guhr";
    }
    return "unknown";
}

namespace {

double j_one(double alpha, double K) { return std::pow(K, alpha) / gamma(alpha + 1.0); }

// J-constants read off at the snapped boundary nodes.
struct Points {
    double Ke, Kx, KT;
};

Points points(const Mesh& mesh)
{
    const auto& bn = mesh.boundary();
    return {mesh.k(bn.eta_index), mesh.k(bn.xi_index), mesh.k(mesh.intervals())};
}

} // namespace

UniquenessCertificate uniqueness_certificate(const LangevinProblem& p, const Assumptions& asm_, const Mesh& mesh)
{
    p.validate();
    const auto sc = structural_constants(p, mesh);
    const auto& o = p.orders;
    const Points pt = points(mesh);
    const double rs = o.rho + o.sigma;
    const double lam = p.lambda;

    const double Je = j_one(rs, pt.Ke);
    const double JTx = j_one(rs, pt.KT) - p.mu * j_one(rs + o.delta, pt.Kx);

    UniquenessCertificate c;
    double r11 = 0, r12 = 0, r21 = 0, r22 = 0;
    for (std::size_t i = 0; i < mesh.size(); ++i) {
        r11 = std::max(r11, std::abs(sc.d21[i]) * sc.sigma11 + std::abs(sc.d22[i]) * sc.sigma21);
        r12 = std::max(r12, std::abs(sc.d11[i]) * Je + std::abs(sc.d12[i]) * JTx);
        r21 = std::max(r21, std::abs(sc.dd21[i]) * sc.sigma11 + std::abs(sc.dd22[i]) * sc.sigma21);
        r22 = std::max(r22, std::abs(sc.dd11[i]) * Je + std::abs(sc.dd12[i]) * JTx);
    }
    c.rho11 = lam * r11;
    c.rho12 = r12;
    c.rho21 = lam * r21;
    c.rho22 = r22;

    double s11 = 0, s13 = 0, s21 = 0, s23 = 0;
    for (std::size_t i = 0; i < mesh.size(); ++i) {
        const double K = mesh.k(i);
        const double j_rs = j_one(rs, K);
        const double j_rsd = j_one(rs - o.delta, K);
        s11 = std::max(s11, std::abs(lam * j_one(o.sigma, K) + c.rho11 + asm_.L1 * (j_rs + c.rho12)));
        s13 = std::max(s13, std::abs(j_rs));
        s21 = std::max(s21, std::abs(lam * j_one(o.sigma - o.delta, K) + c.rho21 + asm_.L1 * (j_rsd + c.rho22)));
        s23 = std::max(s23, std::abs(j_rsd));
    }
    c.s11 = s11;
    c.s13 = s13 + c.rho12;
    c.s12 = asm_.L2 * c.s13;
    c.s21 = s21;
    c.s23 = s23 + c.rho22;
    c.s22 = asm_.L2 * c.s23;
    c.s_max = std::max({c.s11, c.s12, c.s21, c.s22});
    c.row_sum = std::max(c.s11 + c.s12, c.s21 + c.s22);
    c.holds = c.s_max > 0.0 && c.s_max < 1.0;

    if (p.f) {
        for (std::size_t i = 0; i < mesh.size(); ++i) {
            c.L0 = std::max(c.L0, std::abs(p.f(mesh.t(i), 0.0, 0.0)));
        }
    }
    if (c.holds) {
        c.radius = c.L0 * std::max(c.s13, c.s23) / (1.0 - c.s_max);
    }
    return c;
}

ExistenceCertificate existence_certificate(const LangevinProblem& p, const Assumptions& asm_, const Mesh& mesh)
{
    p.validate();
    const auto sc = structural_constants(p, mesh);
    const auto& o = p.orders;
    const Points pt = points(mesh);
    const double rs = o.rho + o.sigma;
    const std::size_t N = mesh.intervals();

    ExistenceCertificate c;
    c.L11 = j_one(rs, pt.KT) + j_one(rs - o.delta, pt.KT) +
            (std::abs(sc.d11[N]) + std::abs(sc.dd11[N])) * j_one(rs, pt.Ke);
    c.L12 = (std::abs(sc.d12[N]) + std::abs(sc.dd12[N])) * (j_one(rs, pt.KT) - p.mu * j_one(rs + o.delta, pt.Kx));
    c.L21 = j_one(o.sigma, pt.KT) + std::abs(sc.d21[N]) * sc.sigma11 + std::abs(sc.d22[N]) * sc.sigma21;
    c.L22 = j_one(o.sigma - o.delta, pt.KT) + std::abs(sc.dd21[N]) * sc.sigma11 + std::abs(sc.dd22[N]) * sc.sigma21;
    c.product = p.lambda * (c.L21 + c.L22);
    c.holds = c.product > 0.0 && c.product < 1.0;
    if (c.holds) {
        c.radius = 1.01 * (c.L11 + c.L12) * asm_.L / (1.0 - c.product);
    }
    return c;
}

StabilityReport uh_bound(const LangevinProblem& p, const Assumptions& asm_, const Mesh& mesh, bool generalized)
{
    const auto u = uniqueness_certificate(p, asm_, mesh);
    StabilityReport r;
    r.variant = generalized ? StabilityVariant::GeneralizedUH : StabilityVariant::UH;
    r.epsilon = generalized ? 1.0 : asm_.epsilon;
    if (!(r.epsilon >= 0.0)) {
        fail(ErrorKind::InvalidParameter, "epsilon must be >= 0");
    }
    const double KT = mesh.k(mesh.intervals());
    r.kappa0 = std::pow(KT, 1.0 - p.orders.delta) / gamma(2.0 - p.orders.delta);
    r.c_eps = r.epsilon * u.s13;
    r.denominator = 1.0 - u.s11 - u.s12 * r.kappa0;
    if (!(r.denominator > 0.0 && r.denominator < 1.0)) {
        fail(ErrorKind::ConditionViolated,
             "stability condition 0 < 1 - s11 - s12*kappa0 < 1 fails (value " + std::to_string(r.denominator) + ")");
    }
    r.uh_bound = r.c_eps / r.denominator;
    r.t = mesh.nodes();
    r.bound.assign(mesh.size(), r.uh_bound);
    return r;
}

StabilityReport uhr_bound(const LangevinProblem& p, const Assumptions& asm_, const Mesh& mesh, bool generalized)
{
    p.validate();
    if (!asm_.Phi) {
        fail(ErrorKind::InvalidParameter, "Rassias bound needs a weight function Phi");
    }
    if (!(asm_.l_phi > 0.0)) {
        fail(ErrorKind::InvalidParameter, "Rassias bound needs l_phi > 0");
    }
    const auto& o = p.orders;
    const double h = mesh.step();
    const std::size_t n = mesh.size();
    const std::size_t N = mesh.intervals();
    const auto& bn = mesh.boundary();

    StabilityReport r;
    r.variant = generalized ? StabilityVariant::GeneralizedUHR : StabilityVariant::UHR;
    r.epsilon = generalized ? 1.0 : asm_.epsilon;
    if (!(r.epsilon >= 0.0)) {
        fail(ErrorKind::InvalidParameter, "epsilon must be >= 0");
    }
    r.t = mesh.nodes();

    std::vector<double> phi(n);
    for (std::size_t i = 0; i < n; ++i) {
        phi[i] = asm_.Phi(mesh.t(i));
        if (!std::isfinite(phi[i]) || phi[i] < 0.0) {
            fail(ErrorKind::AssumptionViolated, "Phi must be finite and nonnegative");
        }
        if (i > 0 && phi[i] < phi[i - 1]) {
            r.warnings.push_back("Phi is not nondecreasing at t = " + std::to_string(mesh.t(i)));
        }
    }

    const auto Jphi = rl_integral(o.rho, h, phi);
    for (std::size_t i = 0; i < n; ++i) {
        const double limit = asm_.l_phi * phi[i];
        if (Jphi[i] > limit * (1.0 + 1e-9) + 1e-12) {
            fail(ErrorKind::AssumptionViolated, "J^rho[Phi] <= l_phi*Phi fails at t = " + std::to_string(mesh.t(i)));
        }
    }

    r.bound.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        r.bound[i] = r.epsilon * asm_.l_phi * phi[i];
    }

    const auto sc = structural_constants(p, mesh);
    const double rs = o.rho + o.sigma;
    const auto J = rl_integral(rs, h, phi);
    const double at_eta = J[bn.eta_index];
    const double at_T = J[N] - p.mu * rl_integral_at(rs + o.delta, h, phi, bn.xi_index);
    const double orders[3] = {o.sigma, rs, rs + o.delta};
    r.envelope.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double q = r.epsilon * std::abs(J[i] + at_eta * sc.d11[i] + at_T * sc.d12[i]);
        const double K = mesh.k(i);
        double ml = 0.0;
        for (double alpha : orders) {
            ml += mittag_leffler(alpha, p.lambda * gamma(alpha) * std::pow(K, alpha));
        }
        r.envelope[i] = q * ml;
    }
    return r;
}

GronwallResult gronwall_bound(const GridFunction& v, const std::vector<GronwallTerm>& terms, std::size_t k_max)
{
    const Mesh& mesh = *v.mesh();
    const std::size_t n = mesh.size();
    const std::size_t nt = terms.size();
    if (nt == 0 || nt > 3) {
        fail(ErrorKind::InvalidParameter, "gronwall_bound takes one to three terms");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (v[i] < 0.0) {
            fail(ErrorKind::InvalidParameter, "gronwall_bound needs v >= 0");
        }
    }
    for (const auto& term : terms) {
        if (term.g.size() != n) {
            fail(ErrorKind::InvalidParameter, "gronwall term does not match the mesh");
        }
        if (!(term.order > 0.0)) {
            fail(ErrorKind::Order, "gronwall term order must be > 0");
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (term.g[i] < 0.0 || (i > 0 && term.g[i] < term.g[i - 1] - 1e-14 * std::abs(term.g[i - 1]))) {
                fail(ErrorKind::InvalidParameter, "gronwall term g must be nonnegative and nondecreasing");
            }
        }
    }

    std::vector<std::vector<double>> weight(nt, std::vector<double>(n));
    for (std::size_t j = 0; j < nt; ++j) {
        const double gam = gamma(terms[j].order);
        for (std::size_t i = 0; i < n; ++i) {
            weight[j][i] = terms[j].g[i] * gam;
        }
    }

    std::map<double, std::vector<double>> cache;
    auto integral = [&](double order) -> const std::vector<double>& {
        auto it = cache.find(order);
        if (it == cache.end()) {
            it = cache.emplace(order, rl_integral(order, mesh.step(), v.values())).first;
        }
        return it->second;
    };

    GronwallResult res;
    res.bound = v.values();
    std::vector<double> shell(n);
    std::size_t counts[3] = {0, 0, 0};
    for (std::size_t k = 1; k <= k_max; ++k) {
        std::fill(shell.begin(), shell.end(), 0.0);
        // Ordered index tuples grouped by how often each term occurs.
        for (counts[0] = 0; counts[0] <= k; ++counts[0]) {
            const std::size_t rest0 = k - counts[0];
            const std::size_t hi1 = nt >= 2 ? rest0 : 0;
            for (counts[1] = 0; counts[1] <= hi1; ++counts[1]) {
                const std::size_t rest1 = rest0 - counts[1];
                if (nt == 1 && rest0 != 0) {
                    continue;
                }
                if (nt == 2 && rest1 != 0) {
                    continue;
                }
                counts[2] = nt == 3 ? rest1 : 0;
                double order = 0.0;
                double log_multi = std::lgamma(static_cast<double>(k) + 1.0);
                for (std::size_t j = 0; j < nt; ++j) {
                    order += static_cast<double>(counts[j]) * terms[j].order;
                    log_multi -= std::lgamma(static_cast<double>(counts[j]) + 1.0);
                }
                const double multi = std::round(std::exp(log_multi));
                const auto& J = integral(order);
                for (std::size_t i = 0; i < n; ++i) {
                    double prod = multi;
                    for (std::size_t j = 0; j < nt; ++j) {
                        if (counts[j] > 0) {
                            prod *= std::pow(weight[j][i], static_cast<double>(counts[j]));
                        }
                    }
                    shell[i] += prod * J[i];
                }
            }
        }
        double mag = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            res.bound[i] += shell[i];
            mag = std::max(mag, std::abs(shell[i]));
        }
        res.last_shell = mag;
    }
    double top = 0.0;
    for (double b : res.bound) {
        top = std::max(top, std::abs(b));
    }
    res.truncation_warning = res.last_shell > 1e-8 * top;
    return res;
}

} // namespace psifrac
