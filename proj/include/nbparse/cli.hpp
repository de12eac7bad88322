#ifndef NBPARSE_CLI_HPP
#define NBPARSE_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace nbparse {

// Exit codes: 0 success, 1 I/O or data error, 2 usage/validation error,
// 3 oracle audit mismatch.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nbparse

#endif
