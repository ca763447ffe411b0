#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hardy {

/// Failure categories raised by the library. Each maps onto one CLI exit code.
enum class ErrorKind {
    construction,       // invalid value construction (zero denominator, empty dimension)
    arithmetic,         // division by zero
    range,              // float conversion overflow
    dimension_mismatch,
    domination,         // beta - alpha with some alpha_j > beta_j
    domain,             // point outside the admissible set (|z| >= 1, ...)
    usage,              // operation precondition violated by the caller
    singularity,        // <z,w> ~ 1 in the Cauchy kernel
    divergence,         // |z||w| >= 1 for a power series
    evaluation,         // black-box function returned a non-finite value
    parse,
    schema,
    io,
};

inline std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::construction: return "construction";
    case ErrorKind::arithmetic: return "arithmetic";
    case ErrorKind::range: return "range";
    case ErrorKind::dimension_mismatch: return "dimension_mismatch";
    case ErrorKind::domination: return "domination";
    case ErrorKind::domain: return "domain";
    case ErrorKind::usage: return "usage";
    case ErrorKind::singularity: return "singularity";
    case ErrorKind::divergence: return "divergence";
    case ErrorKind::evaluation: return "evaluation";
    case ErrorKind::parse: return "parse";
    case ErrorKind::schema: return "schema";
    case ErrorKind::io: return "io";
    }
    return "unknown";
}

/// Process exit status for an error kind: 1 usage, 2 domain/precondition,
/// 3 numerical, 4 I/O.
inline int exit_code(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::usage:
    case ErrorKind::parse:
    case ErrorKind::schema:
        return 1;
    case ErrorKind::construction:
    case ErrorKind::arithmetic:
    case ErrorKind::dimension_mismatch:
    case ErrorKind::domination:
    case ErrorKind::domain:
        return 2;
    case ErrorKind::range:
    case ErrorKind::singularity:
    case ErrorKind::divergence:
    case ErrorKind::evaluation:
        return 3;
    case ErrorKind::io:
        return 4;
    }
    return 1;
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace hardy
