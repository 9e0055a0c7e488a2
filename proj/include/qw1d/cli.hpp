#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qw1d {

// Full command-line front end; args excludes the program name.
// Exit codes: 0 success (equiv: equivalent), 1 equiv: not equivalent,
// 2 any error.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace qw1d
