#pragma once

#include "psifrac/certify.hpp"
#include "psifrac/langevin.hpp"

#include <string>
#include <utility>
#include <vector>

namespace psifrac {

/// "%.17g"
std::string format_double(double x);

/// Writes content to path, or to stdout when path is empty or "-". IoError on failure.
void write_text(const std::string& path, const std::string& content);

/// t,u,du,residual
std::string solution_csv(const SolutionBundle& b);
/// iter,update_norm
std::string trace_csv(const SolutionBundle& b);
/// t,bound
std::string bound_csv(const StabilityReport& r);
/// name,value rows in declaration order.
std::string named_csv(const std::vector<std::pair<std::string, double>>& rows);

std::vector<std::pair<std::string, double>> certificate_rows(const StructuralConstants& sc,
                                                             const UniquenessCertificate& u,
                                                             const ExistenceCertificate& e, double kappa0);

void emit_csv(const SolutionBundle& b, const std::string& path);
void emit_csv(const StabilityReport& r, const std::string& path);

/// Writes <prefix>_solution.csv and <prefix>_trace.csv.
void plot_data(const SolutionBundle& b, const std::string& prefix);

} // namespace psifrac
