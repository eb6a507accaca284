#include "qfp/error.hpp"

namespace qfp {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
        case ErrorKind::NotPSD: return "NotPSD";
        case ErrorKind::NotSymmetric: return "NotSymmetric";
        case ErrorKind::NotSquare: return "NotSquare";
        case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::DecompositionMismatch: return "DecompositionMismatch";
        case ErrorKind::DegenerateWidth: return "DegenerateWidth";
        case ErrorKind::NotNormalized: return "NotNormalized";
        case ErrorKind::InvalidConfig: return "InvalidConfig";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::ValidationExhausted: return "ValidationExhausted";
        case ErrorKind::ConsistencyFailure: return "ConsistencyFailure";
        case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace qfp
