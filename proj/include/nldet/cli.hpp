#pragma once

#include <iosfwd>

namespace nldet::cli {

enum ExitCode : int {
    kSuccess = 0,
    kInvalidConfig = 2,
    kNotConverged = 3,
    kInternalError = 4,
};

/// Entry point of the `nldet` tool. Output goes to `out` unless --output is
/// given; diagnostics go to `err`. Relative --output paths are resolved
/// against $NLDET_OUTPUT_DIR when it is set.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace nldet::cli
