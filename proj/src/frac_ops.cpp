#include "psifrac/frac_ops.hpp"

#include "psifrac/error.hpp"
#include "psifrac/parallel.hpp"
#include "psifrac/specfn.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace psifrac {

GridFunction::GridFunction(MeshPtr mesh, std::vector<double> values)
    : mesh_(std::move(mesh)), values_(std::move(values))
{
    if (!mesh_) {
        fail(ErrorKind::InvalidParameter, "grid function without mesh");
    }
    if (values_.size() != mesh_->size()) {
        fail(ErrorKind::InvalidParameter, "grid function length " + std::to_string(values_.size()) +
                                              " does not match mesh size " + std::to_string(mesh_->size()));
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            fail(ErrorKind::NonFinite, "grid function value at node " + std::to_string(i) + " is not finite");
        }
    }
}

GridFunction GridFunction::zeros(MeshPtr mesh) { return constant(std::move(mesh), 0.0); }

GridFunction GridFunction::constant(MeshPtr mesh, double c)
{
    const std::size_t n = mesh->size();
    return GridFunction(std::move(mesh), std::vector<double>(n, c));
}

GridFunction GridFunction::from_t(MeshPtr mesh, const std::function<double(double)>& f)
{
    std::vector<double> v(mesh->size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = f(mesh->t(i));
    }
    return GridFunction(std::move(mesh), std::move(v));
}

GridFunction GridFunction::from_k(MeshPtr mesh, const std::function<double(double)>& f)
{
    std::vector<double> v(mesh->size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = f(mesh->k(i));
    }
    return GridFunction(std::move(mesh), std::move(v));
}

double GridFunction::sup_norm() const
{
    double m = 0.0;
    for (double x : values_) {
        m = std::max(m, std::abs(x));
    }
    return m;
}

namespace {

void check_order(double alpha)
{
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        fail(ErrorKind::Order, "integral order must be > 0, got " + std::to_string(alpha));
    }
}

// Weights of the product-trapezoidal rule, evaluated in log space so that
// large orders neither overflow the powers nor underflow h^α/Γ(α+2).
//   J_i = a0[i] f_0 + Σ_{j=1}^{i-1} w[i-j] f_j + last f_i
struct Weights {
    std::vector<double> w;
    std::vector<double> a0;
    double last = 0.0;
};

Weights make_weights(double alpha, double h, std::size_t n)
{
    const double p = alpha + 1.0;
    const double logc = alpha * std::log(h) - std::lgamma(alpha + 2.0);
    Weights wt;
    wt.w.assign(n + 1, 0.0);
    wt.a0.assign(n + 1, 0.0);
    wt.last = std::exp(logc);
    for (std::size_t m = 1; m <= n; ++m) {
        const double md = static_cast<double>(m);
        const double scale = std::exp(logc + p * std::log(md));
        double second;
        double first;
        if (m == 1) {
            second = std::expm1(p * std::log(2.0)) - 1.0;
            first = alpha;
        } else {
            second = std::expm1(p * std::log1p(1.0 / md)) + std::expm1(p * std::log1p(-1.0 / md));
            first = std::expm1(p * std::log1p(-1.0 / md)) + p / md;
        }
        wt.w[m] = second * scale;
        wt.a0[m] = first * scale;
    }
    return wt;
}

double apply_at(const Weights& wt, const std::vector<double>& f, std::size_t i)
{
    if (i == 0) {
        return 0.0;
    }
    double acc = wt.a0[i] * f[0];
    for (std::size_t j = 1; j < i; ++j) {
        acc += wt.w[i - j] * f[j];
    }
    return acc + wt.last * f[i];
}

std::vector<double> reversed(std::vector<double> v)
{
    std::reverse(v.begin(), v.end());
    return v;
}

} // namespace

std::vector<double> rl_integral(double alpha, double h, const std::vector<double>& f)
{
    check_order(alpha);
    const std::size_t n = f.empty() ? 0 : f.size() - 1;
    std::vector<double> out(f.size(), 0.0);
    if (n == 0) {
        return out;
    }
    const Weights wt = make_weights(alpha, h, n);
    parallel_for(n + 1, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            out[i] = apply_at(wt, f, i);
        }
    });
    return out;
}

double rl_integral_at(double alpha, double h, const std::vector<double>& f, std::size_t i)
{
    check_order(alpha);
    if (i >= f.size()) {
        fail(ErrorKind::InvalidParameter, "node index out of range");
    }
    if (i == 0) {
        return 0.0;
    }
    const Weights wt = make_weights(alpha, h, i);
    return apply_at(wt, f, i);
}

std::vector<double> s_derivative(const std::vector<double>& f, double h, int n)
{
    const std::size_t m = f.size();
    std::vector<double> d(m, 0.0);
    if (n == 1) {
        if (m < 3) {
            fail(ErrorKind::InvalidParameter, "first derivative needs at least 3 nodes");
        }
        for (std::size_t i = 1; i + 1 < m; ++i) {
            d[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
        }
        d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
        d[m - 1] = (3.0 * f[m - 1] - 4.0 * f[m - 2] + f[m - 3]) / (2.0 * h);
    } else if (n == 2) {
        if (m < 4) {
            fail(ErrorKind::InvalidParameter, "second derivative needs at least 4 nodes");
        }
        const double h2 = h * h;
        for (std::size_t i = 1; i + 1 < m; ++i) {
            d[i] = (f[i + 1] - 2.0 * f[i] + f[i - 1]) / h2;
        }
        d[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / h2;
        d[m - 1] = (2.0 * f[m - 1] - 5.0 * f[m - 2] + 4.0 * f[m - 3] - f[m - 4]) / h2;
    } else {
        fail(ErrorKind::Order, "only first and second derivatives are supported");
    }
    return d;
}

double trapezoid(const std::vector<double>& f, double h)
{
    if (f.size() < 2) {
        return 0.0;
    }
    double acc = 0.5 * (f.front() + f.back());
    for (std::size_t i = 1; i + 1 < f.size(); ++i) {
        acc += f[i];
    }
    return acc * h;
}

GridFunction frac_integral_left(double order, const GridFunction& u)
{
    return GridFunction(u.mesh(), rl_integral(order, u.mesh()->step(), u.values()));
}

double frac_integral_left_at(double order, const GridFunction& u, std::size_t i)
{
    return rl_integral_at(order, u.mesh()->step(), u.values(), i);
}

GridFunction frac_integral_right(double order, const GridFunction& u)
{
    auto mirrored = rl_integral(order, u.mesh()->step(), reversed(u.values()));
    return GridFunction(u.mesh(), reversed(std::move(mirrored)));
}

GridFunction caputo_left(double order, const GridFunction& u)
{
    if (!(order > 0.0) || !(order <= 2.0)) {
        fail(ErrorKind::Order, "Caputo order must lie in (0, 2], got " + std::to_string(order));
    }
    const int n = order <= 1.0 ? 1 : 2;
    auto w = s_derivative(u.values(), u.mesh()->step(), n);
    if (order == static_cast<double>(n)) {
        return GridFunction(u.mesh(), std::move(w));
    }
    return GridFunction(u.mesh(), rl_integral(n - order, u.mesh()->step(), w));
}

double inversion_residual(double order, const GridFunction& u)
{
    if (!(order > 0.0 && order < 1.0)) {
        fail(ErrorKind::Order, "inversion residual needs order in (0, 1)");
    }
    const auto back = frac_integral_left(order, caputo_left(order, u));
    double worst = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        worst = std::max(worst, std::abs(back[i] - (u[i] - u[0])));
    }
    return worst;
}

double ibp_residual(double order, const GridFunction& u, const GridFunction& v)
{
    if (!(order > 0.0 && order < 1.0)) {
        fail(ErrorKind::Order, "integration by parts check needs order in (0, 1)");
    }
    const Mesh& mesh = *u.mesh();
    const double h = mesh.step();
    const std::size_t n = mesh.size();

    // In s = ψ(τ): dτ = ds/ψ′, so both sides are integrals against V = v/ψ′.
    std::vector<double> V(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double dpsi = mesh.psi().deriv(mesh.t(i));
        if (!(dpsi > 0.0)) {
            fail(ErrorKind::InvalidParameter, "integration by parts check needs psi' > 0 at every node");
        }
        V[i] = v[i] / dpsi;
    }

    const auto du = caputo_left(order, u);
    std::vector<double> lhs_integrand(n);
    for (std::size_t i = 0; i < n; ++i) {
        lhs_integrand[i] = V[i] * du[i];
    }
    const double lhs = trapezoid(lhs_integrand, h);

    // Right Caputo: −J^{1−α}_{b−}[dV/ds].
    const auto dV = s_derivative(V, h, 1);
    auto right = reversed(rl_integral(1.0 - order, h, reversed(dV)));
    std::vector<double> rhs_integrand(n);
    for (std::size_t i = 0; i < n; ++i) {
        rhs_integrand[i] = -u[i] * right[i];
    }
    double rhs = trapezoid(rhs_integrand, h);
    // ∫ u(s) V(b) (s_b − s)^{−α}/Γ(1−α) ds = V(b) (J^{1−α}_{a+} u)(s_b)
    rhs += V[n - 1] * rl_integral_at(1.0 - order, h, u.values(), n - 1);

    const auto JV = reversed(rl_integral(1.0 - order, h, reversed(V)));
    rhs += JV[n - 1] * u[n - 1] - JV[0] * u[0];

    return std::abs(lhs - rhs);
}

ContinuityCheck continuity_bound_check(double order, const GridFunction& u, std::size_t i1, std::size_t i2)
{
    if (!(order > 0.0 && order <= 1.0)) {
        fail(ErrorKind::Order, "continuity bound needs order in (0, 1]");
    }
    if (!(i1 < i2) || i2 >= u.size()) {
        fail(ErrorKind::InvalidParameter, "continuity bound needs node indices i1 < i2 on the mesh");
    }
    const double h = u.mesh()->step();
    ContinuityCheck c;
    c.lhs = std::abs(rl_integral_at(order, h, u.values(), i2) - rl_integral_at(order, h, u.values(), i1));
    const double ds = u.mesh()->s(i2) - u.mesh()->s(i1);
    c.rhs = 2.0 * u.sup_norm() / gamma(order + 1.0) * std::pow(ds, order);
    return c;
}

} // namespace psifrac
