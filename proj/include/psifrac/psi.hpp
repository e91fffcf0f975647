#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace psifrac {

enum class PsiKind { Identity, Logarithm, PowerLaw, Tabulated };

const char* to_string(PsiKind kind) noexcept;

struct PsiSample {
    double t;
    double psi;
};

struct PsiParams {
    double exponent = 1.0;          // PowerLaw only
    std::vector<PsiSample> samples; // Tabulated only
};

/**
 * The generator ψ of the fractional operators.
 *
 * Identity, Logarithm and PowerLaw carry analytic derivatives and inverses.
 * Tabulated ψ interpolates its samples with a monotone piecewise-cubic
 * (Fritsch-Carlson) Hermite interpolant; its derivative is a centered finite
 * difference of that interpolant and its inverse is found by bisection.
 */
class PsiFunction {
public:
    static PsiFunction identity();
    static PsiFunction logarithm();
    static PsiFunction power_law(double exponent);
    static PsiFunction tabulated(std::vector<PsiSample> samples);

    PsiKind kind() const noexcept { return kind_; }
    double exponent() const noexcept { return exponent_; }
    const std::vector<PsiSample>& samples() const noexcept { return samples_; }

    double eval(double t) const;
    double deriv(double t) const;

    /// Solves ψ(t) = s for t in [lo, hi]. Throws InversionFailure when the
    /// target is not bracketed by ψ(lo), ψ(hi).
    double inverse(double s, double lo, double hi) const;

    std::string describe() const;

private:
    PsiFunction(PsiKind kind, double exponent, std::vector<PsiSample> samples);

    double eval_tabulated(double t) const;

    PsiKind kind_;
    double exponent_ = 1.0;
    std::vector<PsiSample> samples_;
    std::vector<double> slopes_;
};

PsiFunction make_psi(PsiKind kind, const PsiParams& params = {});

/// Time points of the boundary value problem, a < η < ξ < T.
struct Domain {
    double a = 0.0;
    double eta = 0.0;
    double xi = 0.0;
    double T = 0.0;

    /// Throws Range naming "domain" unless a < η < ξ < T.
    void validate() const;
};

struct ValidationIssue {
    std::size_t index; // sample index
    double t;
    std::string reason;
};

struct ValidationReport {
    bool valid = true;
    std::vector<ValidationIssue> issues;
};

/**
 * Samples ψ on [a, T] and checks strict monotonicity and ψ′ > 0.
 *
 * Interior samples need a finite positive derivative. At the two endpoints a
 * vanishing or infinite ψ′ is tolerated as long as ψ itself is finite there,
 * which admits t^ρ on [0, T]. Tabulated ψ is additionally checked for
 * non-monotone input samples and for a domain outside the tabulated range.
 */
ValidationReport validate_psi(const PsiFunction& psi, const Domain& dom, std::size_t samples);
ValidationReport validate_psi(const PsiFunction& psi, double a, double b, std::size_t samples);

struct BoundaryNodes {
    std::size_t eta_index = 0;
    std::size_t xi_index = 0;
    double eta_snap = 0.0; // |t_snapped - η|
    double xi_snap = 0.0;
};

/**
 * Nodes t_0 = a < ... < t_N = b whose images s_i = ψ(t_i) are equispaced.
 * All fractional kernels are evaluated in s, where the step is constant.
 */
class Mesh {
public:
    Mesh(PsiFunction psi, std::vector<double> t, std::vector<double> s, double step,
         std::optional<BoundaryNodes> boundary);

    const PsiFunction& psi() const noexcept { return psi_; }
    std::size_t intervals() const noexcept { return t_.size() - 1; }
    std::size_t size() const noexcept { return t_.size(); }
    double step() const noexcept { return step_; }
    double t(std::size_t i) const { return t_[i]; }
    double s(std::size_t i) const { return s_[i]; }
    /// ψ(t_i) − ψ(a)
    double k(std::size_t i) const { return s_[i] - s_[0]; }
    const std::vector<double>& nodes() const noexcept { return t_; }
    const std::vector<double>& images() const noexcept { return s_; }

    bool has_boundary() const noexcept { return boundary_.has_value(); }
    /// Throws InvalidParameter for meshes built without a Domain.
    const BoundaryNodes& boundary() const;

private:
    PsiFunction psi_;
    std::vector<double> t_;
    std::vector<double> s_;
    double step_;
    std::optional<BoundaryNodes> boundary_;
};

using MeshPtr = std::shared_ptr<const Mesh>;

/// N intervals on [a, b]; N ≥ 2.
MeshPtr build_mesh(const PsiFunction& psi, double a, double b, std::size_t N);

/// As above on [a, T] with N ≥ 4, η and ξ snapped to their nearest nodes in s.
MeshPtr build_mesh(const PsiFunction& psi, const Domain& dom, std::size_t N);

} // namespace psifrac
