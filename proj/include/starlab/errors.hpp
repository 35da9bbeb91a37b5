#pragma once

#include <stdexcept>
#include <string>

namespace starlab {

/// Base class for failures of the star solvers.
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The potential never crossed zero before the safeguard radius.
struct NoBoundaryError : SolverError {
    using SolverError::SolverError;
};

/// Adaptive step size underflowed.
struct StiffnessError : SolverError {
    using SolverError::SolverError;
};

/// The requested mass is at or above the collapse threshold for this c.
struct CriticalMassError : SolverError {
    double max_mass_reached;  ///< largest mass achieved, a lower estimate of the threshold
    CriticalMassError(const std::string& msg, double max_mass)
        : SolverError(msg), max_mass_reached(max_mass) {}
};

/// Outer root find could not bracket the target mass.
struct BracketError : SolverError {
    using SolverError::SolverError;
};

/// Fixed-point iteration stagnated or oscillated past the iteration cap.
struct NonconvergenceError : SolverError {
    double last_residual;
    NonconvergenceError(const std::string& msg, double residual)
        : SolverError(msg), last_residual(residual) {}
};

/// The two backends disagree beyond the reconciliation gates.
struct BackendMismatchError : SolverError {
    using SolverError::SolverError;
};

/// Operation has no analogue in the selected model (finite c vs limit).
struct UnsupportedModelError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A rate fit was asked to take the log of a nonpositive sample.
struct FitDomainError : std::invalid_argument {
    double offending_x;
    FitDomainError(const std::string& msg, double x)
        : std::invalid_argument(msg), offending_x(x) {}
};

}  // namespace starlab
