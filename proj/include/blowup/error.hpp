#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace blowup {

/// Machine-readable failure kinds. The CLI maps these to JSON error
/// objects on stderr and exit code 2.
enum class ErrorKind {
    DegenerateSeparation,  // alpha == beta
    NonPositive,           // a parameter violates its sign constraint
    BadVariant,            // phase variant inconsistent with mobility
    EmptyGrid,
    OutOfDomain,           // evaluation at or past the blow-up time
    StepTooLarge,          // integration would cross the blow-up time
    FootprintOutOfDomain,  // a stencil node leaves the field's domain
    ZeroError,             // convergence fit over exact (zero-error) data
    NoBlowUp,              // profile requested for a non-blowing-up family
    NonPositiveValue,      // log-fit input must be positive
    BadThreshold,          // interface threshold outside (0,1)
    BadInput,              // malformed config, JSON, or argument
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

}  // namespace blowup
