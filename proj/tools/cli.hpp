#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace scd::cli {

// Runs the command-line driver on the given arguments (without the
// program name), writing results to out and problems to err.
// Exit codes: 0 success, 1 input error, 2 solver did not converge,
// 3 certificate refuted under --expect-certified.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace scd::cli
