#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace normlab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
struct DomainError : Error {
    using Error::Error;
};

// Quadrature error estimate still above tolerance at the subdivision cap.
struct NonConvergentError : Error {
    NonConvergentError(const std::string& msg, double partial_value, double error_estimate)
        : Error(msg), partial_value(partial_value), error_estimate(error_estimate) {}
    double partial_value = 0.0;
    double error_estimate = 0.0;
};

// Partial sums diverge (monotone endpoint shells or overflow guard tripped).
struct NonIntegrableError : Error {
    using Error::Error;
};

// Bracket expansion for the root finder failed within the overflow guard.
struct NoBracketError : Error {
    using Error::Error;
};

// The 1-D optimizer found no finite objective value on its scan grid.
struct AllSingularError : Error {
    using Error::Error;
};

// An expression evaluated to a non-finite value on a positive-measure set.
struct EvaluationError : Error {
    using Error::Error;
};

struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t position, std::string expected)
        : Error(msg), position(position), expected(std::move(expected)) {}
    std::size_t position = 0;
    std::string expected;
};

// A norm is +infinity; `diagnosis` says which integral or exponent diverged.
struct NormInfiniteError : Error {
    NormInfiniteError(const std::string& msg, std::string diagnosis)
        : Error(msg), diagnosis(std::move(diagnosis)) {}
    explicit NormInfiniteError(const std::string& msg) : Error(msg), diagnosis(msg) {}
    std::string diagnosis;
};

// The alpha < 0 Luxemburg pre-check found a non-monotone modular.
struct ModularNonMonotoneError : Error {
    using Error::Error;
};

// A check's stated precondition fails (e.g. Young functions not ordered).
struct PreconditionUnmetError : Error {
    using Error::Error;
};

} // namespace normlab
