#pragma once

#include "psifrac/langevin.hpp"
#include "psifrac/psi.hpp"

#include <functional>
#include <string>
#include <vector>

namespace psifrac {

/// "identity", "log", "power:R".
PsiFunction parse_psi(const std::string& text);

/// Right-hand sides f(t, u, d) by id. K below is ψ(t) − ψ(a).
///   zero, one, const:C, k (K), exp-k (e^{−K}), sin-u (sin u), cos-d (cos d),
///   mixed (1 + sin(u)/4 + cos(d)/4)
Rhs rhs_from_id(const std::string& id, const PsiFunction& psi, double a);
std::vector<std::string> rhs_ids();

/// Functions of K for operator tests: one, k, k2, sin, exp, pow:B.
std::function<double(double)> test_function(const std::string& id);
std::vector<std::string> test_function_ids();

} // namespace psifrac
