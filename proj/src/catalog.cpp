#include "psifrac/catalog.hpp"

#include "psifrac/error.hpp"

#include <cmath>
#include <cstdlib>

namespace psifrac {

namespace {

bool parse_number(const std::string& text, double& out)
{
    if (text.empty()) {
        return false;
    }
    char* end = nullptr;
    out = std::strtod(text.c_str(), &end);
    return end == text.c_str() + text.size() && std::isfinite(out);
}

bool split_param(const std::string& text, const std::string& prefix, double& value)
{
    return text.rfind(prefix, 0) == 0 && parse_number(text.substr(prefix.size()), value);
}

} // namespace

PsiFunction parse_psi(const std::string& text)
{
    if (text == "identity") {
        return PsiFunction::identity();
    }
    if (text == "log") {
        return PsiFunction::logarithm();
    }
    double r = 0.0;
    if (split_param(text, "power:", r)) {
        return PsiFunction::power_law(r);
    }
    fail(ErrorKind::InvalidParameter, "unknown psi '" + text + "' (identity, log, power:R)");
}

Rhs rhs_from_id(const std::string& id, const PsiFunction& psi, double a)
{
    const double s0 = psi.eval(a);
    double c = 0.0;
    if (id == "zero") {
        return [](double, double, double) { return 0.0; };
    }
    if (id == "one") {
        return [](double, double, double) { return 1.0; };
    }
    if (split_param(id, "const:", c)) {
        return [c](double, double, double) { return c; };
    }
    if (id == "k") {
        return [psi, s0](double t, double, double) { return psi.eval(t) - s0; };
    }
    if (id == "exp-k") {
        return [psi, s0](double t, double, double) { return std::exp(-(psi.eval(t) - s0)); };
    }
    if (id == "sin-u") {
        return [](double, double u, double) { return std::sin(u); };
    }
    if (id == "cos-d") {
        return [](double, double, double d) { return std::cos(d); };
    }
    if (id == "mixed") {
        return [](double, double u, double d) { return 1.0 + 0.25 * std::sin(u) + 0.25 * std::cos(d); };
    }
    fail(ErrorKind::InvalidParameter, "unknown rhs '" + id + "'");
}

std::vector<std::string> rhs_ids() { return {"zero", "one", "const:C", "k", "exp-k", "sin-u", "cos-d", "mixed"}; }

std::function<double(double)> test_function(const std::string& id)
{
    double b = 0.0;
    if (id == "one") {
        return [](double) { return 1.0; };
    }
    if (id == "k") {
        return [](double K) { return K; };
    }
    if (id == "k2") {
        return [](double K) { return K * K; };
    }
    if (id == "sin") {
        return [](double K) { return std::sin(K); };
    }
    if (id == "exp") {
        return [](double K) { return std::exp(K); };
    }
    if (split_param(id, "pow:", b) && b >= 0.0) {
        return [b](double K) { return std::pow(K, b); };
    }
    fail(ErrorKind::InvalidParameter, "unknown test function '" + id + "'");
}

std::vector<std::string> test_function_ids() { return {"one", "k", "k2", "sin", "exp", "pow:B"}; }

} // namespace psifrac
