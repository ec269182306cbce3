#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wm::cli {

/// Runs the command line front end. Exit codes: 0 pass, 1 fail, 2 usage or
/// validation error, 3 inconclusive / hypotheses not met.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wm::cli
