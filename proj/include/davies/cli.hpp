#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace davies::cli {

/// Runs one CLI invocation. args is argv without the program name. The
/// JSON report goes to out (or the file a command's --out selects), human
/// summary lines go to err. Returns the process exit code: 0 when every
/// check passed, 1 when a check failed, 2 on usage or input errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace davies::cli
