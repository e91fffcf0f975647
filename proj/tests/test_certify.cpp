#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "psifrac/certify.hpp"
#include "psifrac/error.hpp"
#include "psifrac/specfn.hpp"

#include <algorithm>
#include <cmath>

namespace pf = psifrac;

namespace {

pf::LangevinProblem instance()
{
    pf::LangevinProblem p;
    p.orders = {1.5, 0.9, 0.3};
    p.lambda = 0.05;
    p.mu = 0.1;
    p.domain = {0.0, 0.25, 0.375, 0.5};
    p.f = [](double, double, double) { return 1.0; };
    return p;
}

pf::Assumptions small_lipschitz()
{
    pf::Assumptions a;
    a.L1 = 0.05;
    a.L2 = 0.05;
    a.L = 1.0;
    a.epsilon = 0.01;
    return a;
}

void expect_kind(pf::ErrorKind kind, const std::function<void()>& fn)
{
    try {
        fn();
        FAIL("expected an error");
    } catch (const pf::Error& e) {
        CHECK(e.kind() == kind);
    }
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

} // namespace

TEST_CASE("pinned uniqueness instance")
{
    // Values from tests/reference/certificate_instance.py (mpmath quadrature, 40 digits).
    auto p = instance();
    auto m = pf::build_mesh(p.psi, p.domain, 1024);
    auto sc = pf::structural_constants(p, *m);
    CHECK(rel(sc.sigma11, 0.29859096593162402093) <= 1e-12);
    CHECK(rel(sc.sigma12, 0.039288284991003160648) <= 1e-12);
    CHECK(rel(sc.sigma21, 0.5292177840704941877) <= 1e-12);
    CHECK(rel(sc.sigma22, 0.14186099721213861037) <= 1e-12);
    CHECK(rel(sc.delta, 0.021566353062727141667) <= 1e-12);

    auto c = pf::uniqueness_certificate(p, small_lipschitz(), *m);
    CHECK(rel(c.rho11, 0.027859522218904810659) <= 1e-10);
    CHECK(rel(c.rho12, 0.063594012805140420738) <= 1e-10);
    CHECK(rel(c.rho21, 0.06096313896617997786) <= 1e-10);
    CHECK(rel(c.rho22, 0.12410261643520925426) <= 1e-10);
    CHECK(rel(c.s11, 0.062076394386580186397) <= 1e-10);
    CHECK(rel(c.s12, 0.0063573499487705650793) <= 1e-10);
    CHECK(rel(c.s13, 0.12714699897541130159) <= 1e-10);
    CHECK(rel(c.s21, 0.10939433934656880439) <= 1e-10);
    CHECK(rel(c.s22, 0.011512195244528403558) <= 1e-10);
    CHECK(rel(c.s23, 0.23024390489056807115) <= 1e-10);
    CHECK(c.s_max == c.s21);
    CHECK(c.holds);
    CHECK(c.row_sum == doctest::Approx(c.s21 + c.s22));
    CHECK(c.L0 == 1.0);
    CHECK(c.radius == doctest::Approx(c.s23 / (1.0 - c.s_max)));
}

TEST_CASE("vanishing lambda and Lipschitz constants")
{
    auto p = instance();
    p.lambda = 1e-12;
    auto m = pf::build_mesh(p.psi, p.domain, 256);
    pf::Assumptions a;
    auto c = pf::uniqueness_certificate(p, a, *m);
    for (double v : {c.s11, c.s12, c.s21, c.s22}) {
        CHECK(v <= 1e-10);
    }
    CHECK(c.s12 == 0.0);
    CHECK(c.s22 == 0.0);
    CHECK(c.holds);

    a.L = 1.0;
    auto e = pf::existence_certificate(p, a, *m);
    CHECK(e.product <= 1e-10);
    CHECK(e.holds);
    CHECK(e.radius == doctest::Approx(1.01 * (e.L11 + e.L12)).epsilon(1e-9));
}

TEST_CASE("constants are nonnegative and grow with T")
{
    auto p = instance();
    auto a = small_lipschitz();
    a.L1 = 0.5;
    a.L2 = 0.5;
    std::vector<pf::UniquenessCertificate> us;
    std::vector<pf::ExistenceCertificate> es;
    std::vector<double> k0;
    for (double T : {0.1, 0.2, 0.4, 0.8, 1.6}) {
        // η and ξ stay fixed on the 1/80 lattice so the snapped nodes are exact
        p.domain = {0.0, 0.05, 0.075, T};
        auto m = pf::build_mesh(p.psi, p.domain, static_cast<std::size_t>(std::lround(T * 80.0)) * 8);
        us.push_back(pf::uniqueness_certificate(p, a, *m));
        es.push_back(pf::existence_certificate(p, a, *m));
        k0.push_back(std::pow(T, 1.0 - p.orders.delta) / pf::gamma(2.0 - p.orders.delta));
    }
    for (std::size_t i = 0; i < us.size(); ++i) {
        const auto& u = us[i];
        const auto& e = es[i];
        for (double v : {u.rho11, u.rho12, u.rho21, u.rho22, u.s11, u.s12, u.s13, u.s21, u.s22, u.s23, e.L11, e.L12,
                         e.L21, e.L22, e.product}) {
            CHECK(v >= 0.0);
        }
        if (i == 0) {
            continue;
        }
        const auto& v = us[i - 1];
        const auto& f = es[i - 1];
        INFO("T index " << i);
        CHECK(u.rho11 >= v.rho11);
        CHECK(u.rho12 >= v.rho12);
        CHECK(u.rho21 >= v.rho21);
        CHECK(u.rho22 >= v.rho22);
        CHECK(u.s11 >= v.s11);
        CHECK(u.s12 >= v.s12);
        CHECK(u.s13 >= v.s13);
        CHECK(u.s21 >= v.s21);
        CHECK(u.s22 >= v.s22);
        CHECK(u.s23 >= v.s23);
        CHECK(e.L11 >= f.L11);
        CHECK(e.L12 >= f.L12);
        CHECK(e.L21 >= f.L21);
        CHECK(e.L22 >= f.L22);
        CHECK(k0[i] >= k0[i - 1]);
    }
    // the shortest interval certifies, the longest does not
    CHECK(us.front().holds);
    CHECK_FALSE(us.back().holds);
}

TEST_CASE("existence constants with mu = 0")
{
    auto p = instance();
    p.mu = 0.0;
    auto m = pf::build_mesh(p.psi, p.domain, 512);
    auto sc = pf::structural_constants(p, *m);
    auto e = pf::existence_certificate(p, small_lipschitz(), *m);
    const std::size_t N = m->intervals();
    const double T = 0.5;
    const double s = p.orders.sigma;
    const double expect21 = std::pow(T, s) / pf::gamma(s + 1.0) + std::abs(sc.d11[N]) * std::pow(0.25, s) / pf::gamma(s + 1.0) +
                            std::abs(sc.d12[N]) * std::pow(T, s) / pf::gamma(s + 1.0);
    CHECK(rel(e.L21, expect21) <= 1e-13);
    CHECK(e.product == doctest::Approx(p.lambda * (e.L21 + e.L22)));
    CHECK(e.holds);
}

TEST_CASE("Ulam-Hyers bound")
{
    auto p = instance();
    auto m = pf::build_mesh(p.psi, p.domain, 512);
    auto a = small_lipschitz();
    auto u = pf::uniqueness_certificate(p, a, *m);

    auto r = pf::uh_bound(p, a, *m);
    CHECK(r.variant == pf::StabilityVariant::UH);
    CHECK(r.c_eps == a.epsilon * u.s13);
    CHECK(r.kappa0 == doctest::Approx(std::pow(0.5, 0.7) / pf::gamma(1.7)).epsilon(1e-14));
    CHECK(r.denominator == doctest::Approx(1.0 - u.s11 - u.s12 * r.kappa0).epsilon(1e-14));
    CHECK(r.uh_bound == doctest::Approx(a.epsilon * u.s13 / r.denominator).epsilon(1e-14));
    CHECK(r.bound.size() == m->size());

    a.epsilon = 0.0;
    CHECK(pf::uh_bound(p, a, *m).uh_bound == 0.0);

    auto g = pf::uh_bound(p, a, *m, true);
    CHECK(g.variant == pf::StabilityVariant::GeneralizedUH);
    CHECK(g.epsilon == 1.0);
    CHECK(g.uh_bound == doctest::Approx(u.s13 / (1.0 - u.s11 - u.s12 * g.kappa0)).epsilon(1e-14));

    a.L1 = 50.0;
    expect_kind(pf::ErrorKind::ConditionViolated, [&] { pf::uh_bound(p, a, *m); });
}

TEST_CASE("Rassias bound")
{
    auto p = instance();
    auto m = pf::build_mesh(p.psi, p.domain, 512);
    const double KT = 0.5;
    const double r = p.orders.rho;
    auto a = small_lipschitz();

    a.Phi = [](double) { return 1.0; };
    a.l_phi = std::pow(KT, r) / pf::gamma(1.0 + r);
    auto rep = pf::uhr_bound(p, a, *m);
    CHECK(rep.variant == pf::StabilityVariant::UHR);
    for (double b : rep.bound) {
        CHECK(b == doctest::Approx(a.epsilon * a.l_phi).epsilon(1e-15));
    }
    CHECK(rep.envelope.size() == m->size());
    CHECK(rep.envelope[0] == 0.0);
    for (double v : rep.envelope) {
        CHECK(v >= 0.0);
    }
    CHECK(rep.warnings.empty());

    auto g = pf::uhr_bound(p, a, *m, true);
    CHECK(g.variant == pf::StabilityVariant::GeneralizedUHR);
    CHECK(g.bound.back() == doctest::Approx(a.l_phi));

    a.epsilon = 0.0;
    for (double b : pf::uhr_bound(p, a, *m).bound) {
        CHECK(b == 0.0);
    }
    for (double b : pf::uhr_bound(p, a, *m).envelope) {
        CHECK(b == 0.0);
    }

    a.epsilon = 0.01;
    a.l_phi *= 0.9;
    expect_kind(pf::ErrorKind::AssumptionViolated, [&] { pf::uhr_bound(p, a, *m); });

    a.Phi = [](double t) { return t; };
    a.l_phi = std::pow(KT, r) / pf::gamma(r + 2.0);
    auto lin = pf::uhr_bound(p, a, *m);
    CHECK(lin.bound.back() == doctest::Approx(a.epsilon * a.l_phi * KT));

    a.Phi = [](double t) { return 1.0 - t; };
    a.l_phi = 10.0;
    CHECK_FALSE(pf::uhr_bound(p, a, *m).warnings.empty());
    a.Phi = [](double t) { return t - 0.25; };
    expect_kind(pf::ErrorKind::AssumptionViolated, [&] { pf::uhr_bound(p, a, *m); });
}

TEST_CASE("Gronwall majorant")
{
    auto m = pf::build_mesh(pf::PsiFunction::identity(), 0.0, 1.0, 200);
    const std::size_t n = m->size();

    auto zero = pf::gronwall_bound(pf::GridFunction::zeros(m), {{std::vector<double>(n, 2.0), 0.7}}, 20);
    for (double b : zero.bound) {
        CHECK(b == 0.0);
    }

    for (double r : {0.5, 0.8, 1.0, 1.5}) {
        // c Γ(ϱ) T^ϱ = 3
        const double c = 3.0 / pf::gamma(r);
        auto res = pf::gronwall_bound(pf::GridFunction::constant(m, 1.0), {{std::vector<double>(n, c), r}}, 60);
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double ex = pf::mittag_leffler(r, c * pf::gamma(r) * std::pow(m->k(i), r));
            worst = std::max(worst, rel(res.bound[i], ex));
        }
        INFO("order " << r);
        CHECK(worst <= 1e-6);
        CHECK_FALSE(res.truncation_warning);
    }

    auto v = pf::GridFunction::from_t(m, [](double t) { return 1.0 + t; });
    std::vector<double> g1(n);
    std::vector<double> g2(n);
    for (std::size_t i = 0; i < n; ++i) {
        g1[i] = 0.5 + m->t(i);
        g2[i] = m->t(i) * m->t(i);
    }
    auto one = pf::gronwall_bound(v, {{g1, 0.6}}, 25);
    auto two = pf::gronwall_bound(v, {{g1, 0.6}, {std::vector<double>(n, 0.0), 1.3}}, 25);
    CHECK(one.bound == two.bound);

    auto three = pf::gronwall_bound(v, {{g1, 0.6}, {g2, 1.3}, {g1, 0.4}}, 25);
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(three.bound[i] >= v[i]);
        CHECK(three.bound[i] >= one.bound[i]);
    }

    auto short_series = pf::gronwall_bound(v, {{g1, 0.6}}, 2);
    CHECK(short_series.truncation_warning);
    CHECK(short_series.last_shell > 0.0);

    std::vector<double> falling(n);
    for (std::size_t i = 0; i < n; ++i) {
        falling[i] = 1.0 - m->t(i);
    }
    CHECK_THROWS_AS(pf::gronwall_bound(v, {{falling, 0.6}}, 5), pf::Error);
    CHECK_THROWS_AS(pf::gronwall_bound(v, {}, 5), pf::Error);
}
