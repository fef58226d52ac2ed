#pragma once

#include <stdexcept>
#include <string>

namespace ringsim {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A parameter or precondition violates its stated domain. The message names
// the offending field.
struct ParameterError : Error {
    using Error::Error;
};

// 1 + Re[chi] <= 0: the dilute-medium index sqrt(1+chi) is no longer real.
struct ModelBreakdownError : Error {
    using Error::Error;
};

// Round-trip amplitude gain >= 1: the passive-cavity model is invalid.
struct AboveThresholdError : Error {
    using Error::Error;
};

// An arcsine argument left [-1, 1] in the analytic linewidth formula.
struct FormulaDomainError : Error {
    using Error::Error;
};

// The linear sensitivity formula hit a zero denominator (critically
// anomalous dispersion); only the self-consistent solver applies there.
struct CadDivergenceError : Error {
    using Error::Error;
};

// Peak extraction failed: maximum on the boundary or a missing half-max
// crossing. Message names the side.
struct PeakExtractionError : Error {
    using Error::Error;
};

// A sampled spectrum window does not contain one full resonance.
struct WindowError : Error {
    using Error::Error;
};

// Root finding failed to localize a solution in the allowed range.
struct SolverError : Error {
    using Error::Error;
};

// EIT calibration could not meet its targets inside the search box.
struct CalibrationError : Error {
    CalibrationError(const std::string& msg, double best_residual_)
        : Error(msg), best_residual(best_residual_) {}
    double best_residual;
};

}  // namespace ringsim
