#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace chbkit::cli {

enum ExitCode : int {
    kOk = 0,
    kInvalidInput = 2,
    kUnwritable = 3,
    kNotAchievable = 4,
};

/// Runs one chbkit command. `args` excludes the program name. Artifacts go
/// to files (or `out` for `--out -`); diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace chbkit::cli
