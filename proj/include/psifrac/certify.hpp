#pragma once

#include "psifrac/frac_ops.hpp"
#include "psifrac/langevin.hpp"
#include "psifrac/psi.hpp"

#include <functional>
#include <string>
#include <vector>

namespace psifrac {

/// Hypotheses on f and the stability weights. (A1) is taken in the
/// two-slot form |f(t,u1,v1) − f(t,u2,v2)| ≤ L1|u1 − u2| + L2|v1 − v2|.
struct Assumptions {
    double L1 = 0.0;
    double L2 = 0.0;
    double L = 0.0; // sup |f|
    std::function<double(double)> chi;
    std::function<double(double)> Phi;
    double l_phi = 0.0;
    double epsilon = 0.0;
};

struct UniquenessCertificate {
    double rho11 = 0, rho12 = 0, rho21 = 0, rho22 = 0;
    double s11 = 0, s12 = 0, s13 = 0, s21 = 0, s22 = 0, s23 = 0;
    double s_max = 0;
    double row_sum = 0; // max(s11 + s12, s21 + s22), the E-norm Lipschitz bound of Ψ
    double L0 = 0;      // sup |f(t, 0, 0)| on the mesh
    double radius = 0;  // L0 max(s13, s23) / (1 − s_max) when holds
    bool holds = false; // 0 < s_max < 1
};

/// Λ entries take the d_ij(T) factors in absolute value.
struct ExistenceCertificate {
    double L11 = 0, L12 = 0, L21 = 0, L22 = 0;
    double product = 0; // λ(Λ21 + Λ22)
    double radius = 0;  // 1.01 (Λ11 + Λ12) L / (1 − product) when holds
    bool holds = false; // 0 < product < 1
};

UniquenessCertificate uniqueness_certificate(const LangevinProblem& p, const Assumptions& asm_,
                                             const Mesh& mesh);
ExistenceCertificate existence_certificate(const LangevinProblem& p, const Assumptions& asm_,
                                           const Mesh& mesh);

enum class StabilityVariant { UH, GeneralizedUH, UHR, GeneralizedUHR };

const char* to_string(StabilityVariant v) noexcept;

struct StabilityReport {
    StabilityVariant variant = StabilityVariant::UH;
    double epsilon = 0.0;
    double kappa0 = 0.0;
    double c_eps = 0.0;       // ε ς13
    double denominator = 0.0; // 1 − ς11 − ς12 κ0
    double uh_bound = 0.0;    // ε ς13 / denominator
    std::vector<double> t;
    std::vector<double> bound;    // pointwise bound per node
    std::vector<double> envelope; // Mittag-Leffler product envelope (Rassias variants)
    std::vector<std::string> warnings;
};

/// UH bound; ε is taken from asm_ (forced to 1 for GeneralizedUH).
/// Throws ConditionViolated unless 0 < 1 − ς11 − ς12 κ0 < 1.
StabilityReport uh_bound(const LangevinProblem& p, const Assumptions& asm_, const Mesh& mesh,
                         bool generalized = false);

/// UHR bound ε l_Φ Φ(t) plus the envelope q(t)·Σ E_α(λΓ(α)K^α) over
/// α ∈ {ς, ϱ+ς, ϱ+ς+δ}. Throws AssumptionViolated when J^ϱ[Φ] ≤ l_Φ Φ
/// fails at a node.
StabilityReport uhr_bound(const LangevinProblem& p, const Assumptions& asm_, const Mesh& mesh,
                          bool generalized = false);

struct GronwallTerm {
    std::vector<double> g; // nonnegative, nondecreasing
    double order = 1.0;
};

struct GronwallResult {
    std::vector<double> bound;
    double last_shell = 0.0;
    bool truncation_warning = false;
};

/// Majorant v + Σ_{k=1}^{K} Σ_{|i|=k} Π(g_i Γ(ϱ_i)) J^{Σϱ_i}[v], at most three terms.
GronwallResult gronwall_bound(const GridFunction& v, const std::vector<GronwallTerm>& terms,
                              std::size_t k_max);

} // namespace psifrac
