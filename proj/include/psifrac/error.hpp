#pragma once

#include <stdexcept>
#include <string>

namespace psifrac {

enum class ErrorKind {
    InvalidParameter,
    InversionFailure,
    Pole,
    NonConvergence,
    Order,
    DegenerateProblem,
    NonFinite,
    NoConvergence,
    ConditionViolated,
    AssumptionViolated,
    Parse,
    Schema,
    Range,
    Io,
};

const char* to_string(ErrorKind kind) noexcept;

/// Base of every exception the library throws. The kind drives CLI exit codes.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

} // namespace psifrac
