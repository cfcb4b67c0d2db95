#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace covkit::cli {

/// Runs one invocation, `args` excluding the program name, e.g.
/// {"covariance", "scenario.json", "--grid-order", "3"}.
/// Exit codes: 0 clean verdict, 2 degenerate input, 1 error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace covkit::cli
