#pragma once

#include "psifrac/error.hpp"
#include "psifrac/frac_ops.hpp"
#include "psifrac/psi.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace psifrac {

struct Orders {
    double rho = 1.5;   // outer derivative, (1, 2]
    double sigma = 0.9; // inner derivative, (0, 1]
    double delta = 0.3; // (0, sigma)
};

/// f(t, u, d) with d = ᶜD^δ u at t.
using Rhs = std::function<double(double, double, double)>;

/**
 * ᶜD^ϱ (ᶜD^ς + λ) u = f(t, u, ᶜD^δ u) on (a, T),
 * u(a) = 0, u(η) = 0, u(T) = μ J^δ u(ξ).
 */
struct LangevinProblem {
    Orders orders;
    double lambda = 0.0;
    double mu = 0.0;
    Domain domain;
    PsiFunction psi = PsiFunction::identity();
    Rhs f;

    /// Throws InvalidParameter on order/parameter ranges, Range on the domain.
    void validate() const;
};

struct StructuralConstants {
    double sigma11 = 0.0, sigma12 = 0.0, sigma21 = 0.0, sigma22 = 0.0;
    double delta = 0.0;          // σ11σ22 − σ12σ21 (signed)
    double delta_explicit = 0.0; // the expanded bracket form; delta = sigma11 · delta_explicit
    double cross_check = 0.0;    // |delta − σ11·delta_explicit| / |delta|
    std::vector<double> d11, d12, d21, d22;
    std::vector<double> dd11, dd12, dd21, dd22; // ᶜD^δ of the above, analytic
};

StructuralConstants structural_constants(const LangevinProblem& p, const Mesh& mesh);

struct ResidualReport {
    double interior = 0.0; // max |ᶜD^ϱ(ᶜD^ς u + λu) − f_u| away from the ends
    double at_a = 0.0;     // |u(a)|
    double at_eta = 0.0;   // |u(η)|
    double nonlocal = 0.0; // |u(T) − μ J^δ u(ξ)|
    std::vector<double> pointwise; // zero at the excluded end nodes
};

ResidualReport residual(const LangevinProblem& p, const GridFunction& u);

struct SolverConfig {
    std::size_t n = 512;
    double tol = 1e-10;
    std::size_t max_iter = 200;
    double omega = 1.0;
};

struct SolutionBundle {
    MeshPtr mesh;
    std::vector<double> u;
    std::vector<double> du;
    std::size_t iterations = 0;
    double update_norm = 0.0;
    double omega = 1.0; // relaxation in effect at exit
    std::vector<double> trace; // update norm per iteration
    ResidualReport residual;
    std::vector<std::string> warnings;
};

/// Thrown when max_iter is reached; carries the partial bundle.
class NoConvergenceError : public Error {
public:
    NoConvergenceError(const std::string& what, SolutionBundle bundle)
        : Error(ErrorKind::NoConvergence, what), bundle_(std::make_shared<SolutionBundle>(std::move(bundle))) {}

    const SolutionBundle& bundle() const noexcept { return *bundle_; }

private:
    std::shared_ptr<SolutionBundle> bundle_;
};

/// Fixed-point operator and its δ-derivative channel.
std::pair<std::vector<double>, std::vector<double>> apply_Psi(const LangevinProblem& p, const Mesh& mesh,
                                                              const StructuralConstants& sc,
                                                              const std::vector<double>& u,
                                                              const std::vector<double>& du);

/// Relaxed Picard iteration from u ≡ 0, or from initial(t) with its δ-derivative
/// taken numerically.
SolutionBundle solve_picard(const LangevinProblem& p, const SolverConfig& cfg,
                            const std::function<double(double)>& initial = {});
SolutionBundle solve_picard(const LangevinProblem& p, MeshPtr mesh, const SolverConfig& cfg,
                            const std::function<double(double)>& initial = {});

/// Problem with f = F(t) sampled on F's mesh. λ = 0 is solved in closed form,
/// λ > 0 by Picard iteration.
SolutionBundle solve_linear(const LangevinProblem& p, const GridFunction& F, const SolverConfig& cfg);

/// Exact solution with its forcing: u* = K^κ (K − K_η) Q(K), K = ψ(t) − ψ(a).
struct ManufacturedSpec {
    double kappa = 4.5;
    std::vector<double> coeffs{1.0}; // leading coefficients of Q; one more is solved for
    double l1 = 0.0;                 // f += l1 (sin u − sin u*)
    double l2 = 0.0;                 // f += l2 (cos d − cos d*)
};

struct Manufactured {
    std::vector<double> q;                        // all coefficients of Q
    std::vector<std::pair<double, double>> terms; // u* = Σ c K^p as (c, p)
    std::function<double(double)> exact;          // t ↦ u*(t)
    std::function<double(double)> exact_du;       // t ↦ ᶜD^δ u*(t)
    std::function<double(double)> forcing;        // t ↦ ᶜD^ϱ(ᶜD^ς + λ) u*(t)
    Rhs f;
};

/// Requires κ − ς > 1. The caller's problem supplies orders, λ, μ, domain, ψ.
Manufactured build_manufactured(const LangevinProblem& p, const ManufacturedSpec& spec);

} // namespace psifrac
