#include "psifrac/langevin.hpp"

#include "psifrac/specfn.hpp"

#include <cmath>

namespace psifrac {

Manufactured build_manufactured(const LangevinProblem& p, const ManufacturedSpec& spec)
{
    const auto& o = p.orders;
    if (spec.coeffs.empty()) {
        fail(ErrorKind::InvalidParameter, "manufactured solution needs at least one coefficient");
    }
    if (!(spec.kappa - o.sigma > 1.0)) {
        fail(ErrorKind::InvalidParameter, "manufactured solution needs kappa - sigma > 1");
    }
    const double a = p.domain.a;
    const PsiFunction psi = p.psi;
    const double s0 = psi.eval(a);
    const double Ke = psi.eval(p.domain.eta) - s0;
    const double Kx = psi.eval(p.domain.xi) - s0;
    const double KT = psi.eval(p.domain.T) - s0;

    // Nonlocal functional of K^e: K_T^e − μ J^δ[K^e](ξ).
    auto functional = [&](double e) {
        return std::pow(KT, e) - p.mu * gamma(e + 1.0) / gamma(e + 1.0 + o.delta) * std::pow(Kx, e + o.delta);
    };
    auto G = [&](std::size_t j) {
        const double e = spec.kappa + static_cast<double>(j);
        return functional(e + 1.0) - Ke * functional(e);
    };

    Manufactured m;
    m.q = spec.coeffs;
    const std::size_t last = m.q.size();
    double acc = 0.0;
    for (std::size_t j = 0; j < last; ++j) {
        acc += m.q[j] * G(j);
    }
    const double g_last = G(last);
    if (!(std::abs(g_last) > 1e-14 * std::max(1.0, std::abs(acc)))) {
        fail(ErrorKind::InvalidParameter, "cannot satisfy the nonlocal condition with the last coefficient");
    }
    m.q.push_back(-acc / g_last);

    for (std::size_t j = 0; j < m.q.size(); ++j) {
        const double e = spec.kappa + static_cast<double>(j);
        m.terms.emplace_back(m.q[j], e + 1.0);
        m.terms.emplace_back(-Ke * m.q[j], e);
    }

    struct Term {
        double c, p;
    };
    std::vector<Term> u_terms, du_terms, f_terms;
    for (auto [c, e] : m.terms) {
        u_terms.push_back({c, e});
        du_terms.push_back({c * gamma(e + 1.0) / gamma(e + 1.0 - o.delta), e - o.delta});
        const double e1 = e - o.sigma;
        const double c1 = c * gamma(e + 1.0) / gamma(e1 + 1.0);
        f_terms.push_back({c1 * gamma(e1 + 1.0) / gamma(e1 + 1.0 - o.rho), e1 - o.rho});
        if (p.lambda != 0.0) {
            f_terms.push_back({p.lambda * c * gamma(e + 1.0) / gamma(e + 1.0 - o.rho), e - o.rho});
        }
    }
    auto sum = [psi, s0](std::vector<Term> terms) {
        return [terms = std::move(terms), psi, s0](double t) {
            const double K = psi.eval(t) - s0;
            double acc = 0.0;
            for (const auto& term : terms) {
                acc += term.c * std::pow(K, term.p);
            }
            return acc;
        };
    };
    m.exact = sum(u_terms);
    m.exact_du = sum(du_terms);
    m.forcing = sum(f_terms);

    const double l1 = spec.l1;
    const double l2 = spec.l2;
    auto exact = m.exact;
    auto exact_du = m.exact_du;
    auto forcing = m.forcing;
    m.f = [=](double t, double u, double d) {
        double val = forcing(t);
        if (l1 != 0.0) {
            val += l1 * (std::sin(u) - std::sin(exact(t)));
        }
        if (l2 != 0.0) {
            val += l2 * (std::cos(d) - std::cos(exact_du(t)));
        }
        return val;
    };
    return m;
}

} // namespace psifrac
