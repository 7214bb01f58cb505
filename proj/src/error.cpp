#include "lsym/error.hpp"

namespace lsym {

const char* error_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::FieldMismatch: return "FieldMismatch";
        case ErrorKind::DivideByZero: return "DivideByZero";
        case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
        case ErrorKind::DivisionByP: return "DivisionByP";
        case ErrorKind::EmptyReliableWindow: return "EmptyReliableWindow";
        case ErrorKind::NotInvertibleOnWindow: return "NotInvertibleOnWindow";
        case ErrorKind::ContractionBoundViolated: return "ContractionBoundViolated";
        case ErrorKind::ConvergenceGuardFailed: return "ConvergenceGuardFailed";
        case ErrorKind::NotNormalized: return "NotNormalized";
        case ErrorKind::ExponentOutsideWindow: return "ExponentOutsideWindow";
        case ErrorKind::SupportViolation: return "SupportViolation";
        case ErrorKind::ZeroOnContour: return "ZeroOnContour";
        case ErrorKind::ResidualTooLarge: return "ResidualTooLarge";
        case ErrorKind::AmbiguousDominantIndex: return "AmbiguousDominantIndex";
        case ErrorKind::IndexMismatch: return "IndexMismatch";
        case ErrorKind::NotPrincipalUnit: return "NotPrincipalUnit";
        case ErrorKind::NotMeromorphic: return "NotMeromorphic";
        case ErrorKind::BranchTrackingFailed: return "BranchTrackingFailed";
        case ErrorKind::GNotRegularAtZero: return "GNotRegularAtZero";
        case ErrorKind::SingularCompression: return "SingularCompression";
        case ErrorKind::NotStabilized: return "NotStabilized";
        case ErrorKind::RootAtExpansionPoint: return "RootAtExpansionPoint";
        case ErrorKind::NotSplit: return "NotSplit";
        case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

int exit_code(ErrorKind kind) { return 3 + static_cast<int>(kind); }

}  // namespace lsym
