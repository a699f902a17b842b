#ifndef IMPLODE_CLI_HPP
#define IMPLODE_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace implode::cli {

// Runs one CLI invocation. Exit codes: 0 success, 2 validation error,
// 3 solver or verification failure. Output is written to `out`,
// diagnostics to `err`; the binary in tools/ forwards std streams.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace implode::cli

#endif
