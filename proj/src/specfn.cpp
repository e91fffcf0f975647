#include "psifrac/specfn.hpp"

#include "psifrac/error.hpp"

#include <cmath>
#include <string>

namespace psifrac {

double gamma(double x)
{
    if (x <= 0.0 && x == std::floor(x)) {
        fail(ErrorKind::Pole, "gamma has a pole at " + std::to_string(x));
    }
    return std::tgamma(x);
}

double erf(double x) { return std::erf(x); }

double mittag_leffler(const MLParams& params, double z)
{
    if (!(params.alpha > 0.0) || !(params.beta > 0.0) || !(params.tol > 0.0)) {
        fail(ErrorKind::InvalidParameter, "mittag_leffler needs alpha > 0, beta > 0, tol > 0");
    }
    if (!std::isfinite(z) || std::abs(z) > params.radius) {
        fail(ErrorKind::Range, "mittag_leffler argument outside series radius");
    }
    if (z == 0.0) {
        return 1.0 / gamma(params.beta);
    }

    const long double alpha = params.alpha;
    const long double beta = params.beta;
    const long double logz = std::log(std::abs(static_cast<long double>(z)));
    const bool negative = z < 0.0;

    long double sum = 0.0L;
    int small = 0;
    constexpr int max_terms = 10000;
    for (int k = 0; k < max_terms; ++k) {
        const long double arg = alpha * k + beta;
        // direct powl/tgammal keeps full precision while both stay finite
        long double mag;
        if (arg < 1700.0L) {
            const long double num = std::pow(std::abs(static_cast<long double>(z)), static_cast<long double>(k));
            mag = std::isfinite(num) ? num / std::tgamma(arg) : std::exp(k * logz - std::lgamma(arg));
        } else {
            mag = std::exp(k * logz - std::lgamma(arg));
        }
        long double term = (negative && (k % 2 == 1)) ? -mag : mag;
        sum += term;
        if (std::abs(term) < params.tol * std::abs(sum)) {
            if (++small == 3) {
                return static_cast<double>(sum);
            }
        } else {
            small = 0;
        }
    }
    fail(ErrorKind::NonConvergence, "mittag_leffler exceeded 10000 terms");
}

} // namespace psifrac
