#pragma once

namespace psifrac {

/// Γ(x). Throws PoleError at x ∈ {0, −1, −2, …}.
double gamma(double x);

double erf(double x);

struct MLParams {
    double alpha = 1.0;
    double beta = 1.0;
    double tol = 1e-16;
    double radius = 50.0; // |z| above this is rejected
};

/**
 * Two-parameter Mittag-Leffler function E_{α,β}(z) = Σ z^k / Γ(αk + β),
 * summed term by term until three consecutive terms fall below tol·|sum|.
 * Series only: |z| > radius throws RangeError, more than 10000 terms throws
 * NonConvergence.
 */
double mittag_leffler(const MLParams& params, double z);

inline double mittag_leffler(double alpha, double z)
{
    MLParams p;
    p.alpha = alpha;
    return mittag_leffler(p, z);
}

} // namespace psifrac
