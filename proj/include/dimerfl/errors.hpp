#pragma once

#include <stdexcept>
#include <string>

namespace dimerfl {

/// Bad or inconsistent user-facing configuration (CLI flags, config files,
/// conflicting parameter triples). Maps to exit code 2 in the CLI.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Numerical failure while solving (singular resolvent, degenerate null
/// space, ...). Maps to exit code 3 in the CLI.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input outside the physical domain of a formula (kr12 <= 0, |mu.r| > 1, ...).
struct DomainError : NumericalError {
    using NumericalError::NumericalError;
};

/// delta_emit = j_coupling = 0: R = 0 and the mixing angle is undefined.
struct DegenerateGeometryError : DomainError {
    using DomainError::DomainError;
};

/// The Liouvillian null space has dimension > 1 at tolerance.
struct NonUniqueSteadyStateError : NumericalError {
    int null_dimension;
    explicit NonUniqueSteadyStateError(int dim)
        : NumericalError("steady state is not unique: Liouvillian null space has dimension " +
                         std::to_string(dim)),
          null_dimension(dim) {}
};

/// (L + i(omega + i Gamma)) is numerically singular at some grid frequency.
struct SingularResolventError : NumericalError {
    double omega;
    explicit SingularResolventError(double w)
        : NumericalError("resolvent is singular at omega = " + std::to_string(w) +
                         "; a finite detector linewidth is required"),
          omega(w) {}
};

/// g2(0) requested for a state with vanishing intensity.
struct UndefinedCorrelationError : NumericalError {
    using NumericalError::NumericalError;
};

/// Central finite difference failed its Richardson convergence check.
struct StepSizeError : NumericalError {
    using NumericalError::NumericalError;
};

/// Every grid point of the spectrum fell below the Fisher floor.
struct NoSignalError : NumericalError {
    using NumericalError::NumericalError;
};

}  // namespace dimerfl
