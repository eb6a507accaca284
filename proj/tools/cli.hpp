#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qfp::cli {

inline constexpr const char* kToolVersion = "1.0.0";

// Exit codes shared by every subcommand.
enum ExitCode : int {
    kOk = 0,
    kInternalError = 1,
    kInputError = 2,
    kConsistencyFailure = 3,
    kValidationExhausted = 4,
};

// Runs the tool on `args` (excluding the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qfp::cli
