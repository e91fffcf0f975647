#include "psifrac/csv.hpp"

#include "psifrac/error.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

namespace psifrac {

std::string format_double(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_text(const std::string& path, const std::string& content)
{
    if (path.empty() || path == "-") {
        std::cout << content;
        std::cout.flush();
        if (!std::cout) {
            fail(ErrorKind::Io, "cannot write to standard output");
        }
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        fail(ErrorKind::Io, "cannot open '" + path + "' for writing");
    }
    out << content;
    out.close();
    if (!out) {
        fail(ErrorKind::Io, "write to '" + path + "' failed");
    }
}

std::string solution_csv(const SolutionBundle& b)
{
    std::string s = "t,u,du,residual\n";
    const auto& pw = b.residual.pointwise;
    for (std::size_t i = 0; i < b.u.size(); ++i) {
        s += format_double(b.mesh->t(i));
        s += ',';
        s += format_double(b.u[i]);
        s += ',';
        s += format_double(b.du[i]);
        s += ',';
        s += format_double(i < pw.size() ? pw[i] : 0.0);
        s += '\n';
    }
    return s;
}

std::string trace_csv(const SolutionBundle& b)
{
    std::string s = "iter,update_norm\n";
    for (std::size_t i = 0; i < b.trace.size(); ++i) {
        s += std::to_string(i + 1);
        s += ',';
        s += format_double(b.trace[i]);
        s += '\n';
    }
    return s;
}

std::string bound_csv(const StabilityReport& r)
{
    std::string s = "t,bound\n";
    for (std::size_t i = 0; i < r.t.size(); ++i) {
        s += format_double(r.t[i]);
        s += ',';
        s += format_double(r.bound[i]);
        s += '\n';
    }
    return s;
}

std::string named_csv(const std::vector<std::pair<std::string, double>>& rows)
{
    std::string s = "name,value\n";
    for (const auto& [name, value] : rows) {
        s += name;
        s += ',';
        s += format_double(value);
        s += '\n';
    }
    return s;
}

std::vector<std::pair<std::string, double>> certificate_rows(const StructuralConstants& sc,
                                                             const UniquenessCertificate& u,
                                                             const ExistenceCertificate& e, double kappa0)
{
    const std::size_t N = sc.d11.size() - 1;
    return {
        {"sigma11", sc.sigma11},
        {"sigma12", sc.sigma12},
        {"sigma21", sc.sigma21},
        {"sigma22", sc.sigma22},
        {"Delta", sc.delta},
        {"Delta_bracket", sc.delta_explicit},
        {"d11_T", sc.d11[N]},
        {"d12_T", sc.d12[N]},
        {"d21_T", sc.d21[N]},
        {"d22_T", sc.d22[N]},
        {"Dd11_T", sc.dd11[N]},
        {"Dd12_T", sc.dd12[N]},
        {"Dd21_T", sc.dd21[N]},
        {"Dd22_T", sc.dd22[N]},
        {"rho11", u.rho11},
        {"rho12", u.rho12},
        {"rho21", u.rho21},
        {"rho22", u.rho22},
        {"s11", u.s11},
        {"s12", u.s12},
        {"s13", u.s13},
        {"s21", u.s21},
        {"s22", u.s22},
        {"s23", u.s23},
        {"s_max", u.s_max},
        {"row_sum", u.row_sum},
        {"L0", u.L0},
        {"radius_uniqueness", u.radius},
        {"Lambda11", e.L11},
        {"Lambda12", e.L12},
        {"Lambda21", e.L21},
        {"Lambda22", e.L22},
        {"lambda_Lambda", e.product},
        {"radius_existence", e.radius},
        {"kappa0", kappa0},
    };
}

void emit_csv(const SolutionBundle& b, const std::string& path) { write_text(path, solution_csv(b)); }

void emit_csv(const StabilityReport& r, const std::string& path) { write_text(path, bound_csv(r)); }

void plot_data(const SolutionBundle& b, const std::string& prefix)
{
    write_text(prefix + "_solution.csv", solution_csv(b));
    write_text(prefix + "_trace.csv", trace_csv(b));
}

} // namespace psifrac
