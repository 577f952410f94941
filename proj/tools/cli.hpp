#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace zonalpd::cli {

/// Runs one command line (without the program name). Exit codes: 0 success,
/// 1 violated precondition or bound, 2 unparseable arguments.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace zonalpd::cli
