#include "psifrac/psi.hpp"

#include "psifrac/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace psifrac {

const char* to_string(PsiKind kind) noexcept
{
    switch (kind) {
    case PsiKind::Identity: return "identity";
    case PsiKind::Logarithm: return "log";
    case PsiKind::PowerLaw: return "power";
    case PsiKind::Tabulated: return "tabulated";
    }
    return "unknown";
}

namespace {

// Fritsch-Carlson slopes: zero at local extrema, weighted harmonic mean otherwise.
std::vector<double> pchip_slopes(const std::vector<PsiSample>& p)
{
    const std::size_t n = p.size();
    std::vector<double> d(n, 0.0);
    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        h[k] = p[k + 1].t - p[k].t;
        delta[k] = (p[k + 1].psi - p[k].psi) / h[k];
    }
    if (n == 2) {
        d[0] = d[1] = delta[0];
        return d;
    }
    for (std::size_t k = 1; k + 1 < n; ++k) {
        if (delta[k - 1] * delta[k] <= 0.0) {
            d[k] = 0.0;
        } else {
            const double w1 = 2.0 * h[k] + h[k - 1];
            const double w2 = h[k] + 2.0 * h[k - 1];
            d[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
        }
    }
    auto end_slope = [](double h0, double h1, double del0, double del1) {
        double dd = ((2.0 * h0 + h1) * del0 - h0 * del1) / (h0 + h1);
        if (dd * del0 <= 0.0) {
            dd = 0.0;
        } else if (del0 * del1 <= 0.0 && std::abs(dd) > std::abs(3.0 * del0)) {
            dd = 3.0 * del0;
        }
        return dd;
    };
    d[0] = end_slope(h[0], h[1], delta[0], delta[1]);
    d[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    return d;
}

} // namespace

PsiFunction::PsiFunction(PsiKind kind, double exponent, std::vector<PsiSample> samples)
    : kind_(kind), exponent_(exponent), samples_(std::move(samples))
{
    if (kind_ == PsiKind::Tabulated) {
        slopes_ = pchip_slopes(samples_);
    }
}

PsiFunction PsiFunction::identity() { return PsiFunction(PsiKind::Identity, 1.0, {}); }

PsiFunction PsiFunction::logarithm() { return PsiFunction(PsiKind::Logarithm, 1.0, {}); }

PsiFunction PsiFunction::power_law(double exponent)
{
    if (!(exponent > 0.0) || !std::isfinite(exponent)) {
        fail(ErrorKind::InvalidParameter, "power-law exponent must be > 0");
    }
    return PsiFunction(PsiKind::PowerLaw, exponent, {});
}

PsiFunction PsiFunction::tabulated(std::vector<PsiSample> samples)
{
    if (samples.size() < 2) {
        fail(ErrorKind::InvalidParameter, "tabulated psi needs at least 2 samples");
    }
    for (std::size_t k = 0; k < samples.size(); ++k) {
        if (!std::isfinite(samples[k].t) || !std::isfinite(samples[k].psi)) {
            fail(ErrorKind::InvalidParameter, "tabulated psi samples must be finite");
        }
        if (k > 0 && !(samples[k].t > samples[k - 1].t)) {
            fail(ErrorKind::InvalidParameter, "tabulated psi abscissae must be strictly increasing");
        }
    }
    return PsiFunction(PsiKind::Tabulated, 1.0, std::move(samples));
}

PsiFunction make_psi(PsiKind kind, const PsiParams& params)
{
    switch (kind) {
    case PsiKind::Identity: return PsiFunction::identity();
    case PsiKind::Logarithm: return PsiFunction::logarithm();
    case PsiKind::PowerLaw: return PsiFunction::power_law(params.exponent);
    case PsiKind::Tabulated: return PsiFunction::tabulated(params.samples);
    }
    fail(ErrorKind::InvalidParameter, "unknown psi kind");
}

double PsiFunction::eval_tabulated(double t) const
{
    const auto& p = samples_;
    const std::size_t n = p.size();
    if (t <= p.front().t) {
        return p.front().psi + slopes_.front() * (t - p.front().t);
    }
    if (t >= p.back().t) {
        return p.back().psi + slopes_.back() * (t - p.back().t);
    }
    auto it = std::upper_bound(p.begin(), p.end(), t,
                               [](double x, const PsiSample& q) { return x < q.t; });
    const std::size_t k = static_cast<std::size_t>(it - p.begin()) - 1;
    const std::size_t k1 = std::min(k + 1, n - 1);
    const double h = p[k1].t - p[k].t;
    const double x = (t - p[k].t) / h;
    const double x2 = x * x;
    const double x3 = x2 * x;
    const double h00 = 2.0 * x3 - 3.0 * x2 + 1.0;
    const double h10 = x3 - 2.0 * x2 + x;
    const double h01 = -2.0 * x3 + 3.0 * x2;
    const double h11 = x3 - x2;
    return h00 * p[k].psi + h10 * h * slopes_[k] + h01 * p[k1].psi + h11 * h * slopes_[k1];
}

double PsiFunction::eval(double t) const
{
    switch (kind_) {
    case PsiKind::Identity: return t;
    case PsiKind::Logarithm: return t > 0.0 ? std::log(t) : (t == 0.0 ? -std::numeric_limits<double>::infinity()
                                                                     : std::numeric_limits<double>::quiet_NaN());
    case PsiKind::PowerLaw: return t >= 0.0 ? std::pow(t, exponent_) : std::numeric_limits<double>::quiet_NaN();
    case PsiKind::Tabulated: return eval_tabulated(t);
    }
    return std::numeric_limits<double>::quiet_NaN();
}

double PsiFunction::deriv(double t) const
{
    switch (kind_) {
    case PsiKind::Identity: return 1.0;
    case PsiKind::Logarithm: return t > 0.0 ? 1.0 / t : std::numeric_limits<double>::quiet_NaN();
    case PsiKind::PowerLaw:
        if (t < 0.0) {
            return std::numeric_limits<double>::quiet_NaN();
        }
        if (t == 0.0) {
            return exponent_ > 1.0 ? 0.0 : (exponent_ == 1.0 ? 1.0 : std::numeric_limits<double>::infinity());
        }
        return exponent_ * std::pow(t, exponent_ - 1.0);
    case PsiKind::Tabulated: {
        const double lo = samples_.front().t;
        const double hi = samples_.back().t;
        const double step = 1e-6 * std::max(1.0, hi - lo);
        const double left = std::max(lo, t - step);
        const double right = std::min(hi, t + step);
        if (right <= left) {
            return slopes_.front();
        }
        return (eval_tabulated(right) - eval_tabulated(left)) / (right - left);
    }
    }
    return std::numeric_limits<double>::quiet_NaN();
}

double PsiFunction::inverse(double s, double lo, double hi) const
{
    switch (kind_) {
    case PsiKind::Identity: return s;
    case PsiKind::Logarithm: return std::exp(s);
    case PsiKind::PowerLaw: return s <= 0.0 ? 0.0 : std::pow(s, 1.0 / exponent_);
    case PsiKind::Tabulated: break;
    }
    double f_lo = eval(lo) - s;
    double f_hi = eval(hi) - s;
    if (f_lo > 0.0 || f_hi < 0.0) {
        fail(ErrorKind::InversionFailure, "psi value " + std::to_string(s) + " is not bracketed on [" +
                                              std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = eval(mid) - s;
        if (std::abs(f_mid) <= 1e-12 || hi - lo <= 1e-15 * std::max(1.0, std::abs(mid))) {
            return mid;
        }
        if (f_mid < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::string PsiFunction::describe() const
{
    if (kind_ == PsiKind::PowerLaw) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "power:%.17g", exponent_);
        return buf;
    }
    if (kind_ == PsiKind::Tabulated) {
        return "tabulated(" + std::to_string(samples_.size()) + " samples)";
    }
    return to_string(kind_);
}

void Domain::validate() const
{
    const bool finite = std::isfinite(a) && std::isfinite(eta) && std::isfinite(xi) && std::isfinite(T);
    if (!finite || !(a < eta && eta < xi && xi < T)) {
        fail(ErrorKind::Range, "domain: require a < eta < xi < T");
    }
}

ValidationReport validate_psi(const PsiFunction& psi, const Domain& dom, std::size_t samples)
{
    return validate_psi(psi, dom.a, dom.T, samples);
}

ValidationReport validate_psi(const PsiFunction& psi, double a, double b, std::size_t samples)
{
    ValidationReport report;
    auto issue = [&report](std::size_t idx, double t, std::string reason) {
        report.valid = false;
        report.issues.push_back({idx, t, std::move(reason)});
    };
    if (samples < 2) {
        samples = 2;
    }
    if (!(a < b)) {
        issue(0, a, "empty interval");
        return report;
    }

    if (psi.kind() == PsiKind::Tabulated) {
        const auto& p = psi.samples();
        for (std::size_t k = 1; k < p.size(); ++k) {
            if (!(p[k].psi > p[k - 1].psi)) {
                issue(k, p[k].t, "tabulated samples not strictly increasing");
            }
        }
        if (a < p.front().t || b > p.back().t) {
            issue(0, a, "domain extends outside tabulated range");
        }
    }

    double prev = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        const double t = (i + 1 == samples) ? b : a + (b - a) * static_cast<double>(i) / static_cast<double>(samples - 1);
        const double value = psi.eval(t);
        const double slope = psi.deriv(t);
        const bool endpoint = (i == 0 || i + 1 == samples);
        if (!std::isfinite(value)) {
            issue(i, t, "psi not finite");
            continue;
        }
        if (endpoint) {
            if (std::isnan(slope) || slope < 0.0) {
                issue(i, t, "psi' undefined or negative at endpoint");
            }
        } else if (!std::isfinite(slope) || !(slope > 0.0)) {
            issue(i, t, "psi' not positive");
        }
        if (i > 0 && !(value > prev)) {
            issue(i, t, "psi not strictly increasing");
        }
        prev = value;
    }
    return report;
}

Mesh::Mesh(PsiFunction psi, std::vector<double> t, std::vector<double> s, double step,
           std::optional<BoundaryNodes> boundary)
    : psi_(std::move(psi)), t_(std::move(t)), s_(std::move(s)), step_(step), boundary_(boundary)
{
}

const BoundaryNodes& Mesh::boundary() const
{
    if (!boundary_) {
        fail(ErrorKind::InvalidParameter, "mesh was built without boundary points");
    }
    return *boundary_;
}

namespace {

struct Grid {
    std::vector<double> t, s;
    double step;
};

Grid make_grid(const PsiFunction& psi, double a, double b, std::size_t N)
{
    if (N < 2) {
        fail(ErrorKind::InvalidParameter, "mesh needs N >= 2 intervals");
    }
    if (!(a < b)) {
        fail(ErrorKind::InvalidParameter, "mesh needs a < b");
    }
    const double s0 = psi.eval(a);
    const double sN = psi.eval(b);
    if (!std::isfinite(s0) || !std::isfinite(sN) || !(sN > s0)) {
        fail(ErrorKind::InvalidParameter, "psi must be finite and increasing on [a, b]");
    }
    Grid g;
    g.step = (sN - s0) / static_cast<double>(N);
    g.t.resize(N + 1);
    g.s.resize(N + 1);
    for (std::size_t i = 0; i <= N; ++i) {
        g.s[i] = (i == N) ? sN : s0 + static_cast<double>(i) * g.step;
    }
    g.t[0] = a;
    g.t[N] = b;
    for (std::size_t i = 1; i < N; ++i) {
        g.t[i] = psi.inverse(g.s[i], a, b);
    }
    for (std::size_t i = 1; i <= N; ++i) {
        if (!(g.t[i] > g.t[i - 1])) {
            fail(ErrorKind::InversionFailure, "mesh nodes are not strictly increasing");
        }
    }
    return g;
}

} // namespace

MeshPtr build_mesh(const PsiFunction& psi, double a, double b, std::size_t N)
{
    Grid g = make_grid(psi, a, b, N);
    return std::make_shared<const Mesh>(psi, std::move(g.t), std::move(g.s), g.step, std::nullopt);
}

MeshPtr build_mesh(const PsiFunction& psi, const Domain& dom, std::size_t N)
{
    dom.validate();
    if (N < 4) {
        fail(ErrorKind::InvalidParameter, "mesh with boundary points needs N >= 4 intervals");
    }
    Grid g = make_grid(psi, dom.a, dom.T, N);
    auto nearest = [&](double x) {
        const double pos = (psi.eval(x) - g.s[0]) / g.step;
        return static_cast<std::size_t>(std::max(0.0, std::round(pos)));
    };
    BoundaryNodes nodes;
    nodes.eta_index = std::clamp<std::size_t>(nearest(dom.eta), 1, N - 2);
    nodes.xi_index = std::clamp<std::size_t>(nearest(dom.xi), nodes.eta_index + 1, N - 1);
    nodes.eta_snap = std::abs(g.t[nodes.eta_index] - dom.eta);
    nodes.xi_snap = std::abs(g.t[nodes.xi_index] - dom.xi);
    return std::make_shared<const Mesh>(psi, std::move(g.t), std::move(g.s), g.step, nodes);
}

} // namespace psifrac
