#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace smoothspec {

// Exit codes: 0 success, 1 configuration error, 2 runtime error.
int run_cli(int argc, char** argv);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace smoothspec
