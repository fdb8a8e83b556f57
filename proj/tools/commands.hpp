#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace agreeloss::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitInputError = 1,
    kExitUndefined = 2,
    kExitConvergence = 3,
};

/// Runs the tool with `args` (argv without the program name). `default_format`
/// is the value of AGREELOSS_FORMAT, if set.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        std::optional<std::string> default_format = std::nullopt);

}  // namespace agreeloss::cli
