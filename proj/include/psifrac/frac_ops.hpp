#pragma once

#include "psifrac/psi.hpp"

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace psifrac {

/// Values at the nodes of a mesh. All entries are finite.
class GridFunction {
public:
    GridFunction(MeshPtr mesh, std::vector<double> values);

    static GridFunction zeros(MeshPtr mesh);
    static GridFunction constant(MeshPtr mesh, double c);
    /// f(t_i)
    static GridFunction from_t(MeshPtr mesh, const std::function<double(double)>& f);
    /// f(ψ(t_i) − ψ(a))
    static GridFunction from_k(MeshPtr mesh, const std::function<double(double)>& f);

    const MeshPtr& mesh() const noexcept { return mesh_; }
    const std::vector<double>& values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }

    double sup_norm() const;

private:
    MeshPtr mesh_;
    std::vector<double> values_;
};

// Raw kernels on an equispaced s-grid with step h. Node 0 is the base point.

/// Product-trapezoidal left Riemann-Liouville integral of order α > 0.
std::vector<double> rl_integral(double alpha, double h, const std::vector<double>& f);
/// Same rule evaluated at node i only.
double rl_integral_at(double alpha, double h, const std::vector<double>& f, std::size_t i);
/// n-th s-derivative (n = 1, 2): central differences inside, one-sided
/// second-order stencils at the two ends.
std::vector<double> s_derivative(const std::vector<double>& f, double h, int n);
/// ∫ f ds by the trapezoid rule.
double trapezoid(const std::vector<double>& f, double h);

/// (J^{α,ψ}_{a+})[u] at every node; node 0 is 0. OrderError if α ≤ 0.
GridFunction frac_integral_left(double order, const GridFunction& u);
/// (J^{α,ψ}_{a+})[u] at node i.
double frac_integral_left_at(double order, const GridFunction& u, std::size_t i);
/// (J^{α,ψ}_{b−})[u] at every node; node N is 0.
GridFunction frac_integral_right(double order, const GridFunction& u);

/// Left ψ-Caputo derivative for order in (0, 2]: differentiate n = ⌈order⌉
/// times in s, then integrate with order n − order.
GridFunction caputo_left(double order, const GridFunction& u);

/// max_i |J^α(ᶜD^α u) − (u − u(a))|, α ∈ (0, 1).
double inversion_residual(double order, const GridFunction& u);

/**
 * Absolute difference of the two sides of the fractional integration by
 * parts formula for α ∈ (0, 1), n = 1. The right-sided derivative acting on
 * v/ψ′ is taken in Riemann-Liouville form, i.e. the right Caputo derivative
 * plus the endpoint term (v/ψ′)(b)(ψ(b) − ψ)^{−α}/Γ(1 − α); the two agree
 * when v(b) = 0.
 */
double ibp_residual(double order, const GridFunction& u, const GridFunction& v);

struct ContinuityCheck {
    double lhs;
    double rhs;
};

/// lhs = |J^α u(t_{i2}) − J^α u(t_{i1})|, rhs = 2‖u‖∞ (ψ(t_{i2}) − ψ(t_{i1}))^α / Γ(α + 1).
/// Order in (0, 1].
ContinuityCheck continuity_bound_check(double order, const GridFunction& u, std::size_t i1,
                                       std::size_t i2);

} // namespace psifrac
