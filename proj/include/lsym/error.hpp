#pragma once

#include <stdexcept>
#include <string>

namespace lsym {

enum class ErrorKind {
    InvalidArgument,
    FieldMismatch,
    DivideByZero,
    PrecisionExhausted,
    DivisionByP,
    EmptyReliableWindow,
    NotInvertibleOnWindow,
    ContractionBoundViolated,
    ConvergenceGuardFailed,
    NotNormalized,
    ExponentOutsideWindow,
    SupportViolation,
    ZeroOnContour,
    ResidualTooLarge,
    AmbiguousDominantIndex,
    IndexMismatch,
    NotPrincipalUnit,
    NotMeromorphic,
    BranchTrackingFailed,
    GNotRegularAtZero,
    SingularCompression,
    NotStabilized,
    RootAtExpansionPoint,
    NotSplit,
    ParseError,
};

/// Library error carrying a machine-readable kind.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Stable name of an error kind, e.g. "ZeroOnContour".
const char* error_name(ErrorKind kind);

/// Distinct process exit code per kind (all >= 3; 1 and 2 are reserved by the CLI).
int exit_code(ErrorKind kind);

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace lsym
