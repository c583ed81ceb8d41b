#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mono::cli {

enum ExitCode : int {
    success = 0,
    verification_failed = 1,
    malformed_input = 2,
    refused = 3, ///< NotRealizable, TorsionPresent or DegenerateSeifertForm
};

/// Runs `mono <args...>`; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

} // namespace mono::cli
