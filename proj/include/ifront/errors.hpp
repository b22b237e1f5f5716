#ifndef IFRONT_ERRORS_HPP
#define IFRONT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ifront {

/// Base class for runtime failures of the numerical pipeline. Anything derived
/// from it maps to exit code 1 at the CLI surface; std::invalid_argument is
/// reserved for caller mistakes (bad parameters, bad windows).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Integration step size underflowed below the configured minimum.
struct StepFailureError : NumericalError {
    double y;
    explicit StepFailureError(double y_)
        : NumericalError("step size underflow at y = " + std::to_string(y_)), y(y_) {}
};

/// A shot ran out of budget without reaching a classifiable state; the caller
/// must enlarge y_max.
struct InconclusiveError : NumericalError {
    double y_max;
    double alpha = 0.0;
    bool has_alpha = false;
    explicit InconclusiveError(double y_max_)
        : NumericalError("shot inconclusive at y_max = " + std::to_string(y_max_) +
                         "; enlarge the integration budget"),
          y_max(y_max_) {}
    InconclusiveError(double y_max_, double alpha_)
        : NumericalError("shot at alpha = " + std::to_string(alpha_) +
                         " inconclusive at y_max = " + std::to_string(y_max_) +
                         "; enlarge the integration budget"),
          y_max(y_max_), alpha(alpha_), has_alpha(true) {}
};

/// Geometric expansion of the shooting parameter found no Low/High bracket.
struct BracketNotFoundError : NumericalError {
    using NumericalError::NumericalError;
};

/// Profile tails are not resolved well enough for the requested diagnostic.
struct TailsNotResolvedError : NumericalError {
    using NumericalError::NumericalError;
};

/// The speed-consistency integral of the slow-front calibration cannot bracket
/// the target speed.
struct CalibrationFailedError : NumericalError {
    using NumericalError::NumericalError;
};

/// Explicit PDE step requested with a time step above the stability bound.
struct CflViolationError : NumericalError {
    using NumericalError::NumericalError;
};

/// Tracked PDE front entered the boundary buffer zone.
struct FrontHitBoundaryError : NumericalError {
    using NumericalError::NumericalError;
};

} // namespace ifront

#endif
