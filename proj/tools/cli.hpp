#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace al::cli {

/// Runs the `al` command line with `args` (not including the program name).
/// Returns the process exit status: 0 on success, 1 when a check fails or an
/// error is reported, 2 for usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace al::cli
