#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ntil {

// Command-line front end. Returns the process exit code: 0 on success/sat,
// 2 on timeout or a race without a winner, 1 on any error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ntil
