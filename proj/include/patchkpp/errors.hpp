#ifndef PATCHKPP_ERRORS_HPP
#define PATCHKPP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace patchkpp {

// Base class for all library errors. Subclasses group into three families
// used by the CLI for exit codes: configuration/input errors, precondition
// failures (e.g. asking for a spreading speed of a dying population), and
// numerical failures (a solver that should have converged did not).
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ConfigError : Error {
    using Error::Error;
};
struct PreconditionError : Error {
    using Error::Error;
};
struct NumericalError : Error {
    using Error::Error;
};

// -- construction / input ------------------------------------------------
struct NonPositiveParameter : ConfigError {
    using ConfigError::ConfigError;
};
struct AlphaOutOfRange : ConfigError {
    using ConfigError::ConfigError;
};
struct DegenerateRates : ConfigError {
    using ConfigError::ConfigError;
};
struct ResolutionTooCoarse : ConfigError {
    using ConfigError::ConfigError;
};
struct NegativeInitialData : ConfigError {
    using ConfigError::ConfigError;
};
struct InconsistentInterfaceValues : ConfigError {
    using ConfigError::ConfigError;
};
struct NotSourceSink : PreconditionError {
    using PreconditionError::PreconditionError;
};
struct NotPersistent : PreconditionError {
    using PreconditionError::PreconditionError;
};
struct WindowTooSmall : ConfigError {
    using ConfigError::ConfigError;
};

// -- numerical -----------------------------------------------------------
struct NoRootInBracket : NumericalError {
    using NumericalError::NumericalError;
};
struct BranchSelectionFailed : NumericalError {
    using NumericalError::NumericalError;
};
struct IterationDiverged : NumericalError {
    using NumericalError::NumericalError;
};
struct NonPositiveEigenvector : NumericalError {
    using NumericalError::NumericalError;
};
struct MethodsDisagree : NumericalError {
    using NumericalError::NumericalError;
};
struct NewtonDiverged : NumericalError {
    using NumericalError::NumericalError;
};
struct LinearSolveFailed : NumericalError {
    using NumericalError::NumericalError;
};
struct BoundViolated : NumericalError {
    using NumericalError::NumericalError;
};
struct ConvergenceStalled : NumericalError {
    using NumericalError::NumericalError;
};
struct EigenInconsistent : NumericalError {
    using NumericalError::NumericalError;
};
struct NonUniqueLimit : NumericalError {
    using NumericalError::NumericalError;
};
struct BracketNotFound : NumericalError {
    using NumericalError::NumericalError;
};
struct FrontHitBoundary : NumericalError {
    using NumericalError::NumericalError;
};
struct NoCrossingFound : NumericalError {
    using NumericalError::NumericalError;
};

} // namespace patchkpp

#endif
