#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "psifrac/error.hpp"
#include "psifrac/psi.hpp"

#include <cmath>

using namespace psifrac;

TEST_CASE("named generators evaluate analytically")
{
    auto id = make_psi(PsiKind::Identity);
    CHECK(id.eval(2.0) == 2.0);
    CHECK(id.deriv(2.0) == 1.0);

    auto lg = make_psi(PsiKind::Logarithm);
    CHECK(lg.eval(std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(lg.deriv(std::exp(1.0)) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));

    PsiParams p;
    p.exponent = 2.0;
    auto pw = make_psi(PsiKind::PowerLaw, p);
    CHECK(pw.eval(3.0) == 9.0);
    CHECK(pw.deriv(3.0) == 6.0);
}

TEST_CASE("power law rejects non-positive exponent")
{
    PsiParams p;
    p.exponent = 0.0;
    try {
        make_psi(PsiKind::PowerLaw, p);
        FAIL("expected InvalidParameter");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidParameter);
    }
    p.exponent = -1.0;
    CHECK_THROWS_AS(make_psi(PsiKind::PowerLaw, p), Error);
}

TEST_CASE("validator verdicts")
{
    CHECK(validate_psi(PsiFunction::identity(), 0.0, 1.0, 100).valid);
    CHECK(validate_psi(PsiFunction::power_law(2.0), 0.0, 2.0, 100).valid);
    CHECK(validate_psi(PsiFunction::power_law(0.5), 0.0, 2.0, 100).valid);
    CHECK(validate_psi(PsiFunction::logarithm(), 1.0, std::exp(1.0), 100).valid);
    CHECK(validate_psi(PsiFunction::logarithm(), Domain{1.0, 1.2, 1.5, 2.0}, 50).valid);

    auto bad_log = validate_psi(PsiFunction::logarithm(), 0.0, 1.0, 100);
    CHECK_FALSE(bad_log.valid);
    REQUIRE_FALSE(bad_log.issues.empty());
    CHECK(bad_log.issues.front().index == 0);

    auto tab = PsiFunction::tabulated({{0.0, 0.0}, {0.25, 0.3}, {0.5, 0.2}, {0.75, 0.6}, {1.0, 1.0}});
    auto rep = validate_psi(tab, 0.0, 1.0, 200);
    CHECK_FALSE(rep.valid);
    bool flagged = false;
    for (const auto& issue : rep.issues) {
        flagged = flagged || issue.index == 2;
    }
    CHECK(flagged);
}

TEST_CASE("tabulated generator interpolates monotonically")
{
    std::vector<PsiSample> s;
    for (int k = 0; k <= 10; ++k) {
        const double t = 1.0 + 0.2 * k;
        s.push_back({t, std::log(t)});
    }
    auto tab = PsiFunction::tabulated(s);
    for (const auto& q : s) {
        CHECK(tab.eval(q.t) == doctest::Approx(q.psi).epsilon(1e-14));
    }
    CHECK(validate_psi(tab, 1.0, 3.0, 500).valid);
    double prev = tab.eval(1.0);
    for (int i = 1; i <= 1000; ++i) {
        const double v = tab.eval(1.0 + 2.0 * i / 1000.0);
        CHECK(v > prev);
        prev = v;
    }
    CHECK(tab.eval(2.1) == doctest::Approx(std::log(2.1)).epsilon(1e-3));
    CHECK(tab.deriv(2.1) == doctest::Approx(1.0 / 2.1).epsilon(1e-2));

    const double target = tab.eval(1.7);
    CHECK(std::abs(tab.eval(tab.inverse(target, 1.0, 3.0)) - target) <= 1e-12);
    CHECK_THROWS_AS(tab.inverse(5.0, 1.0, 3.0), Error);
}

TEST_CASE("mesh examples")
{
    auto m = build_mesh(PsiFunction::identity(), 0.0, 1.0, 4);
    const std::vector<double> expect{0.0, 0.25, 0.5, 0.75, 1.0};
    CHECK(m->nodes() == expect);

    auto lg = build_mesh(PsiFunction::logarithm(), 1.0, std::exp(1.0), 2);
    CHECK(lg->t(0) == 1.0);
    CHECK(lg->t(1) == doctest::Approx(std::exp(0.5)).epsilon(1e-15));
    CHECK(lg->t(2) == std::exp(1.0));

    auto pw = build_mesh(PsiFunction::power_law(2.0), 0.0, 2.0, 4);
    CHECK(pw->t(0) == 0.0);
    CHECK(pw->t(1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(pw->t(2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(pw->t(3) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
    CHECK(pw->t(4) == 2.0);

    CHECK_THROWS_AS(build_mesh(PsiFunction::identity(), 0.0, 1.0, 1), Error);
    CHECK_THROWS_AS(build_mesh(PsiFunction::identity(), Domain{0.0, 0.2, 0.4, 1.0}, 3), Error);
}

TEST_CASE("mesh invariants")
{
    const std::vector<PsiFunction> gens{PsiFunction::identity(), PsiFunction::logarithm(),
                                        PsiFunction::power_law(2.0), PsiFunction::power_law(0.5)};
    const std::vector<std::pair<double, double>> spans{{0.0, 1.0}, {1.0, 3.0}, {0.0, 2.0}, {0.0, 4.0}};
    for (std::size_t g = 0; g < gens.size(); ++g) {
        for (std::size_t N : {4u, 37u, 256u, 1024u}) {
            auto m = build_mesh(gens[g], spans[g].first, spans[g].second, N);
            CHECK(m->t(0) == spans[g].first);
            CHECK(m->t(N) == spans[g].second);
            const double h = m->step();
            for (std::size_t i = 0; i < N; ++i) {
                CHECK(m->t(i + 1) > m->t(i));
                CHECK(std::abs((m->s(i + 1) - m->s(i)) - h) <= 1e-12 * std::abs(h) * 8);
                CHECK(std::abs(gens[g].eval(m->t(i)) - m->s(i)) <= 1e-12 * std::max(1.0, std::abs(m->s(i))));
            }
        }
    }
}

TEST_CASE("identity meshes are uniform in t")
{
    for (std::size_t N = 4; N <= (1u << 16); N *= 2) {
        auto m = build_mesh(PsiFunction::identity(), 0.0, 1.0, N);
        const double h = m->t(1) - m->t(0);
        bool uniform = true;
        for (std::size_t i = 0; i < N; ++i) {
            uniform = uniform && (m->t(i + 1) - m->t(i) == h);
        }
        CHECK(uniform);
    }
}

TEST_CASE("boundary points snap to nodes")
{
    auto m = build_mesh(PsiFunction::identity(), Domain{0.0, 0.25, 0.375, 0.5}, 64);
    REQUIRE(m->has_boundary());
    CHECK(m->boundary().eta_index == 32);
    CHECK(m->boundary().xi_index == 48);
    CHECK(m->boundary().eta_snap == 0.0);
    CHECK(m->boundary().xi_snap == 0.0);

    auto off = build_mesh(PsiFunction::identity(), Domain{0.0, 0.26, 0.39, 1.0}, 10);
    CHECK(off->boundary().eta_index == 3);
    CHECK(off->boundary().xi_index == 4);
    CHECK(off->boundary().eta_snap == doctest::Approx(0.04));
    CHECK(off->boundary().xi_snap == doctest::Approx(0.01));

    auto lg = build_mesh(PsiFunction::logarithm(), Domain{1.0, std::exp(0.25), std::exp(0.5), std::exp(1.0)}, 64);
    CHECK(lg->boundary().eta_index == 16);
    CHECK(lg->boundary().xi_index == 32);

    auto bare = build_mesh(PsiFunction::identity(), 0.0, 1.0, 8);
    CHECK_FALSE(bare->has_boundary());
    CHECK_THROWS_AS(bare->boundary(), Error);
}

TEST_CASE("domain ordering")
{
    CHECK_NOTHROW(Domain({0.0, 0.1, 0.2, 0.3}).validate());
    CHECK_THROWS_AS(Domain({0.0, 0.3, 0.2, 0.4}).validate(), Error);
    CHECK_THROWS_AS(Domain({0.0, 0.1, 0.2, 0.2}).validate(), Error);
}
