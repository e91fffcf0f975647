#include "psifrac/error.hpp"

namespace psifrac {

const char* to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::InversionFailure: return "InversionFailure";
    case ErrorKind::Pole: return "PoleError";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::Order: return "OrderError";
    case ErrorKind::DegenerateProblem: return "DegenerateProblem";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::ConditionViolated: return "ConditionViolated";
    case ErrorKind::AssumptionViolated: return "AssumptionViolated";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Schema: return "SchemaError";
    case ErrorKind::Range: return "RangeError";
    case ErrorKind::Io: return "IoError";
    }
    return "Unknown";
}

void fail(ErrorKind kind, const std::string& message)
{
    throw Error(kind, std::string(to_string(kind)) + ": " + message);
}

} // namespace psifrac
