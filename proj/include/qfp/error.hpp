#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qfp {

enum class ErrorKind {
    ConvergenceFailure,
    NotPSD,
    NotSymmetric,
    NotSquare,
    IndexOutOfRange,
    DimensionMismatch,
    DecompositionMismatch,
    DegenerateWidth,
    NotNormalized,
    InvalidConfig,
    InvalidArgument,
    ValidationExhausted,
    ConsistencyFailure,
    ParseError,
};

std::string_view to_string(ErrorKind kind);

// Every library failure is reported through this type; `kind()` is stable
// and is what callers (and the CLI exit-code mapping) switch on.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what);

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace qfp
