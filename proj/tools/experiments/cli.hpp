#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace localize::tools {

// Parses arguments (without the program name), runs the experiment and returns the exit code:
// 0 all asserted verdicts pass, 1 assertion failure, 2 configuration error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace localize::tools
